//! Permutation groups on an abstract point domain `{0, …, N-1}`.
//!
//! [`PointPerm`] is the workhorse for group actions that are *not* the
//! natural action on `{1, …, n}`: vertex actions of graph automorphisms,
//! the action on a family of vertex sets, and so on.  [`Bsgs`] is a
//! base-and-strong-generating-set structure built by the deterministic
//! Schreier–Sims algorithm; it yields exact group orders (as big integers),
//! membership tests by sifting, and uniform random elements.
//!
//! Composition is left-to-right, matching the right-action convention of
//! [`crate::perm`]: `(p·q)(x) = q(p(x))`.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("image table of length {0} is not a bijection of 0..{0}")]
    NotABijection(usize),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),
    #[error("point {0} outside domain 0..{1}")]
    PointOutOfRange(usize, usize),
    #[error("empty domain")]
    EmptyDomain,
}

/// A permutation of `{0, …, N-1}`, stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointPerm {
    images: Vec<u32>,
}

impl PointPerm {
    pub fn identity(n: usize) -> Self {
        PointPerm {
            images: (0..n as u32).collect(),
        }
    }

    pub fn new(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::EmptyDomain);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || seen[x as usize] {
                return Err(GroupError::NotABijection(n));
            }
            seen[x as usize] = true;
        }
        Ok(PointPerm { images })
    }

    /// The natural 0-based action of a degree-`n` permutation.
    pub fn from_permutation(p: &Permutation) -> Self {
        PointPerm {
            images: (0..p.degree()).map(|i| p.image0(i) as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &PointPerm) -> Result<PointPerm, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DomainMismatch(self.degree(), other.degree()));
        }
        Ok(PointPerm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> PointPerm {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        PointPerm { images }
    }

    /// Points moved by the permutation, in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
            .collect()
    }
}

impl std::fmt::Debug for PointPerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointPerm[deg {}]", self.degree())?;
        let moved = self.support();
        if moved.is_empty() {
            return write!(f, " id");
        }
        for chunk in moved.chunks(8).take(2) {
            for &p in chunk {
                write!(f, " {}->{}", p, self.image(p))?;
            }
        }
        if moved.len() > 16 {
            write!(f, " …")?;
        }
        Ok(())
    }
}

/// Orbit of `point` under the group generated by `gens`, sorted increasing.
pub fn orbit(gens: &[PointPerm], point: usize) -> Result<Vec<usize>, GroupError> {
    let n = match gens.first() {
        Some(g) => g.degree(),
        None => point + 1,
    };
    for g in gens {
        if g.degree() != n {
            return Err(GroupError::DomainMismatch(n, g.degree()));
        }
    }
    if point >= n {
        return Err(GroupError::PointOutOfRange(point, n));
    }
    let mut in_orbit = vec![false; n];
    in_orbit[point] = true;
    let mut queue = vec![point];
    let mut head = 0;
    while head < queue.len() {
        let p = queue[head];
        head += 1;
        for g in gens {
            let q = g.image(p);
            if !in_orbit[q] {
                in_orbit[q] = true;
                queue.push(q);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue)
}

/// Partition of the whole domain into orbits, each sorted, ordered by their
/// smallest element.
pub fn orbit_partition(gens: &[PointPerm], domain: usize) -> Result<Vec<Vec<usize>>, GroupError> {
    let mut seen = vec![false; domain];
    let mut parts = Vec::new();
    for p in 0..domain {
        if seen[p] {
            continue;
        }
        let orb = orbit(gens, p)?;
        for &q in &orb {
            seen[q] = true;
        }
        parts.push(orb);
    }
    Ok(parts)
}

/// One level of a stabilizer chain: a base point, the strong generators that
/// fix all earlier base points, and the Schreier transversal of the base
/// point's orbit (explicit coset representatives, stable under extension).
struct Level {
    base: usize,
    gens: Vec<PointPerm>,
    /// Discovery order of the orbit; `orbit[0] == base`.
    orbit: Vec<usize>,
    /// `rep[p]` maps `base` to `p`; `None` outside the orbit.
    rep: Vec<Option<PointPerm>>,
    /// Verified rectangle: every Schreier pair (orbit index < `done_orbit`,
    /// generator index < `done_gens`) is known to sift to the identity.
    done_orbit: usize,
    done_gens: usize,
}

impl Level {
    fn new(domain: usize, base: usize) -> Self {
        let mut rep = vec![None; domain];
        rep[base] = Some(PointPerm::identity(domain));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            rep,
            done_orbit: 0,
            done_gens: 0,
        }
    }

    /// Adds a generator and extends the orbit incrementally.  Coset
    /// representatives of previously known points are left untouched, which
    /// keeps earlier sift verifications valid.
    fn add_generator(&mut self, g: PointPerm) {
        self.gens.push(g);
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for g in &self.gens {
                let q = g.image(p);
                if self.rep[q].is_none() {
                    let rep_q = self.rep[p]
                        .as_ref()
                        .expect("orbit point has a representative")
                        .compose(g)
                        .expect("equal domains");
                    self.rep[q] = Some(rep_q);
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// A base and strong generating set for a permutation group, produced by the
/// deterministic Schreier–Sims algorithm.
pub struct Bsgs {
    domain: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Runs deterministic Schreier–Sims on `gens`.
    ///
    /// The `seed` only shuffles the order in which input generators are
    /// inserted; the resulting group (order, membership, base) is the same
    /// for every seed, which the tests assert.  Base points are chosen
    /// greedily: each new level uses the moved point with the largest orbit
    /// under the generators that reach that level (ties to the smallest
    /// point).
    pub fn new(gens: &[PointPerm], seed: u64) -> Result<Bsgs, GroupError> {
        let domain = match gens.first() {
            Some(g) => g.degree(),
            None => 1,
        };
        for g in gens {
            if g.degree() != domain {
                return Err(GroupError::DomainMismatch(domain, g.degree()));
            }
        }
        let mut shuffled: Vec<PointPerm> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        shuffled.shuffle(&mut rng);

        let mut chain = Bsgs {
            domain,
            levels: Vec::new(),
        };
        for g in shuffled {
            chain.insert(g, 0);
            chain.verify_from_bottom();
        }
        Ok(chain)
    }

    /// Builds the chain for the group generated by degree-`n` permutations in
    /// their natural 0-based action.
    pub fn from_permutations(gens: &[Permutation], seed: u64) -> Result<Bsgs, GroupError> {
        let pts: Vec<PointPerm> = gens.iter().map(PointPerm::from_permutation).collect();
        Bsgs::new(&pts, seed)
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit sizes along the chain; the group order is their product.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Exact group order.
    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::from(1u32);
        for level in &self.levels {
            ord *= BigUint::from(level.orbit.len());
        }
        ord
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &PointPerm) -> bool {
        if g.degree() != self.domain {
            return false;
        }
        let (residue, _) = self.strip(g.clone(), 0);
        residue.is_identity()
    }

    /// A uniformly random group element: the product of one uniformly random
    /// coset representative per level.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> PointPerm {
        let mut g = PointPerm::identity(self.domain);
        for level in &self.levels {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            let rep = level.rep[p].as_ref().expect("orbit point");
            g = g.compose(rep).expect("equal domains");
        }
        g
    }

    /// Sifts `g` through levels `from..`, multiplying by inverse coset
    /// representatives.  Returns the residue and the first level at which
    /// sifting failed (`levels.len()` when `g` reduced past the whole chain).
    fn strip(&self, mut g: PointPerm, from: usize) -> (PointPerm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let p = g.image(level.base);
            match &level.rep[p] {
                None => return (g, k),
                Some(rep) => {
                    g = g.compose(&rep.inverse()).expect("equal domains");
                }
            }
        }
        (g, self.levels.len())
    }

    /// Sifts `g` from level `at` and installs the residue (if any) as a
    /// strong generator at every level it qualifies for.  Returns the deepest
    /// level that received a generator.
    fn insert(&mut self, g: PointPerm, at: usize) -> Option<usize> {
        let (residue, stuck) = self.strip(g, at);
        if residue.is_identity() {
            return None;
        }
        if stuck == self.levels.len() {
            // The residue fixes every existing base point: start a new level
            // at a moved point, greedily the one in the residue's largest
            // cycle (ties to the smallest point).
            let orbits = orbit_partition(std::slice::from_ref(&residue), self.domain)
                .expect("valid residue");
            let base = orbits
                .iter()
                .filter(|o| o.len() > 1)
                .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
                .map(|o| o[0])
                .expect("non-identity residue moves a point");
            self.levels.push(Level::new(self.domain, base));
        }
        // The residue fixes the base points of all levels before `stuck`, so
        // it is a legitimate strong generator for levels `at..=stuck`.
        let deepest = stuck.min(self.levels.len() - 1);
        for l in at..=deepest {
            self.levels[l].add_generator(residue.clone());
        }
        Some(deepest)
    }

    /// Verifies every level against the chain below it, deepest level first.
    /// On exit every Schreier generator of every level sifts to the identity,
    /// which certifies that the orbit lengths multiply to the exact group
    /// order.
    fn verify_from_bottom(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.verify_level(i as usize) {
                None => i -= 1,
                // A new strong generator landed at level `j > i`; everything
                // from `j` upward must be (re-)verified before `i` can pass.
                Some(j) => i = j as isize,
            }
        }
    }

    /// Scans the Schreier generators of level `i` that are not yet covered by
    /// the level's verified rectangle.  Returns `Some(j)` as soon as a sift
    /// failure adds a strong generator at level `j > i`; returns `None` when
    /// the whole scan passes, recording the rectangle.
    ///
    /// The rectangle checkpoint is sound because orbits only ever extend and
    /// coset representatives are never rewritten: a pair that once sifted to
    /// the identity takes the identical sift path in every later chain state.
    fn verify_level(&mut self, i: usize) -> Option<usize> {
        let (done_orbit, done_gens) = {
            let level = &self.levels[i];
            (level.done_orbit, level.done_gens)
        };
        // Orbit and generators of level `i` are frozen during this scan:
        // insertions only touch strictly deeper levels.
        let orbit_len = self.levels[i].orbit.len();
        let gens_len = self.levels[i].gens.len();
        for oi in 0..orbit_len {
            for gi in 0..gens_len {
                if oi < done_orbit && gi < done_gens {
                    continue;
                }
                let level = &self.levels[i];
                let u = level.orbit[oi];
                let s = &level.gens[gi];
                let v = s.image(u);
                let rep_u = level.rep[u].as_ref().expect("orbit point");
                let rep_v = level.rep[v].as_ref().expect("orbit closed under gens");
                // Schreier generator rep_u · s · rep_v⁻¹ fixes this level's
                // base point, hence belongs to the next level's group.
                let schreier = rep_u
                    .compose(s)
                    .expect("equal domains")
                    .compose(&rep_v.inverse())
                    .expect("equal domains");
                if schreier.is_identity() {
                    continue;
                }
                if let Some(j) = self.insert(schreier, i + 1) {
                    return Some(j);
                }
            }
        }
        let level = &mut self.levels[i];
        level.done_orbit = orbit_len;
        level.done_gens = gens_len;
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{
        enumerate_alternating, enumerate_even_derangements, enumerate_full_symmetric,
    };

    fn nat(cycles: &str, n: usize) -> PointPerm {
        PointPerm::from_permutation(&Permutation::parse_cycles(n, cycles).unwrap())
    }

    /// Brute-force closure of a generating set (test oracle).
    fn closure(gens: &[PointPerm]) -> Vec<PointPerm> {
        let n = gens[0].degree();
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![PointPerm::identity(n)];
        seen.insert(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head].clone();
            head += 1;
            for s in gens {
                let h = g.compose(s).unwrap();
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        queue
    }

    #[test]
    fn point_perm_validation() {
        assert!(PointPerm::new(vec![0, 1, 2]).is_ok());
        assert!(matches!(
            PointPerm::new(vec![0, 0, 2]),
            Err(GroupError::NotABijection(3))
        ));
        assert!(matches!(
            PointPerm::new(vec![3, 1, 2]),
            Err(GroupError::NotABijection(3))
        ));
        assert!(matches!(PointPerm::new(vec![]), Err(GroupError::EmptyDomain)));
    }

    #[test]
    fn compose_and_inverse() {
        let a = nat("(1 2 3)", 4);
        let b = nat("(3 4)", 4);
        let ab = a.compose(&b).unwrap();
        for p in 0..4 {
            assert_eq!(ab.image(p), b.image(a.image(p)));
        }
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let c = PointPerm::identity(5);
        assert_eq!(
            a.compose(&c),
            Err(GroupError::DomainMismatch(4, 5))
        );
    }

    #[test]
    fn orbits_of_a_three_cycle() {
        let gens = vec![nat("(1 2 3)", 5)];
        assert_eq!(orbit(&gens, 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(orbit(&gens, 3).unwrap(), vec![3]);
        let parts = orbit_partition(&gens, 5).unwrap();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn orders_of_standard_groups() {
        // (generators, expected order)
        let cases: Vec<(Vec<PointPerm>, u64)> = vec![
            (vec![], 1),
            (vec![PointPerm::identity(4)], 1),
            (vec![nat("(1 2 3 4 5 6 7)", 7)], 7),
            // Dihedral group of the pentagon.
            (vec![nat("(1 2 3 4 5)", 5), nat("(2 5)(3 4)", 5)], 10),
            (vec![nat("(1 2 3)", 4), nat("(2 3 4)", 4)], 12),
            (vec![nat("(1 2)", 5), nat("(1 2 3 4 5)", 5)], 120),
            // A 6-cycle is odd, so the pair below generates all of S_6 …
            (vec![nat("(1 2 3)", 6), nat("(1 2 3 4 5 6)", 6)], 720),
            // … while a 3-cycle and a 5-cycle stay inside A_6.
            (vec![nat("(1 2 3)", 6), nat("(2 3 4 5 6)", 6)], 360),
            (vec![nat("(1 2)", 8), nat("(1 2 3 4 5 6 7 8)", 8)], 40320),
        ];
        for (gens, expected) in cases {
            let chain = Bsgs::new(&gens, 42).unwrap();
            assert_eq!(chain.order(), BigUint::from(expected));
        }
    }

    #[test]
    fn alternating_group_membership() {
        let gens = vec![nat("(1 2 3)", 5), nat("(3 4 5)", 5)];
        let chain = Bsgs::new(&gens, 42).unwrap();
        assert_eq!(chain.order(), BigUint::from(60u32));
        for p in enumerate_full_symmetric(5).unwrap() {
            let pp = PointPerm::from_permutation(&p);
            assert_eq!(chain.contains(&pp), p.is_even(), "{p}");
        }
    }

    #[test]
    fn chain_order_matches_brute_force_closure() {
        let cases = vec![
            vec![nat("(1 2)(3 4)", 4), nat("(1 3)(2 4)", 4)],
            vec![nat("(1 2 3)", 4), nat("(1 2)(3 4)", 4)],
            vec![nat("(1 2 3 4)", 4), nat("(1 2)", 4)],
            vec![nat("(1 2 3 4 5 6)", 6), nat("(1 2)", 6)],
        ];
        for gens in cases {
            let chain = Bsgs::new(&gens, 0).unwrap();
            let all = closure(&gens);
            assert_eq!(chain.order(), BigUint::from(all.len()));
            for g in &all {
                assert!(chain.contains(g));
            }
        }
    }

    #[test]
    fn even_derangements_generate_expected_subgroups() {
        // ⟨E_4⟩ is the Klein four-group; ⟨E_5⟩ is all of A_5.
        let e4: Vec<PointPerm> = enumerate_even_derangements(4)
            .unwrap()
            .iter()
            .map(PointPerm::from_permutation)
            .collect();
        assert_eq!(Bsgs::new(&e4, 42).unwrap().order(), BigUint::from(4u32));

        let e5: Vec<PointPerm> = enumerate_even_derangements(5)
            .unwrap()
            .iter()
            .map(PointPerm::from_permutation)
            .collect();
        assert_eq!(Bsgs::new(&e5, 42).unwrap().order(), BigUint::from(60u32));
    }

    #[test]
    fn order_is_invariant_under_generator_order_and_seed() {
        let gens = vec![nat("(1 2 3)", 6), nat("(1 2 3 4 5 6)", 6), nat("(5 6)", 6)];
        let reference = Bsgs::new(&gens, 0).unwrap();
        let samples = [nat("(1 2)(3 4 5)", 6), nat("(1 6)", 6)];
        for seed in [1u64, 7, 42, 1234, 99999] {
            let chain = Bsgs::new(&gens, seed).unwrap();
            assert_eq!(chain.order(), reference.order());
            for s in &samples {
                assert_eq!(chain.contains(s), reference.contains(s));
            }
        }
        let mut reversed = gens.clone();
        reversed.reverse();
        let chain = Bsgs::new(&reversed, 0).unwrap();
        assert_eq!(chain.order(), reference.order());
    }

    #[test]
    fn random_elements_lie_in_the_group() {
        use rand::SeedableRng;
        let gens = vec![nat("(1 2 3)", 5), nat("(3 4 5)", 5)];
        let chain = Bsgs::new(&gens, 42).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut seen_nonidentity = false;
        for _ in 0..200 {
            let g = chain.random_element(&mut rng);
            assert!(chain.contains(&g));
            assert!(g.image(0) < 5);
            seen_nonidentity |= !g.is_identity();
        }
        assert!(seen_nonidentity);
    }

    #[test]
    fn direct_product_order_is_exact() {
        // S_5 × S_5 acting on 10 points: order 120² = 14,400.
        let gens = vec![
            nat("(1 2)", 10),
            nat("(1 2 3 4 5)", 10),
            nat("(6 7)", 10),
            nat("(6 7 8 9 10)", 10),
        ];
        let chain = Bsgs::new(&gens, 42).unwrap();
        assert_eq!(chain.order(), BigUint::from(14_400u32));
        assert_eq!(
            chain.order(),
            chain
                .orbit_lengths()
                .iter()
                .fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l)),
        );
    }

    #[test]
    fn membership_rejects_outsiders() {
        let gens = vec![nat("(1 2 3 4 5)", 5)];
        let chain = Bsgs::new(&gens, 42).unwrap();
        assert_eq!(chain.order(), BigUint::from(5u32));
        assert!(chain.contains(&nat("(1 3 5 2 4)", 5)));
        assert!(!chain.contains(&nat("(1 2)", 5)));
        assert!(!chain.contains(&PointPerm::identity(6)));
    }

    #[test]
    fn natural_action_of_alternating_enumeration() {
        // The chain built from all of A_6's elements as generators agrees
        // with the chain built from two standard generators.
        let all: Vec<PointPerm> = enumerate_alternating(6)
            .unwrap()
            .iter()
            .map(PointPerm::from_permutation)
            .collect();
        let chain = Bsgs::new(&all, 42).unwrap();
        assert_eq!(chain.order(), BigUint::from(360u32));
    }
}
