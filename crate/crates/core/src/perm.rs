//! Permutations of `{1, …, n}` and enumeration of the alternating group.
//!
//! Permutations act on the right: we write `i^σ` for the image of `i` and
//! compose left-to-right, `i^(στ) = (i^σ)^τ`.  Public interfaces speak
//! 1-based points; the image table is stored 0-based and the constructor is
//! the only place the two meet.
//!
//! Enumeration routines are capped at degree [`MAX_ENUM_DEGREE`]: beyond that
//! the group orders leave desk scale and every caller in this crate is out of
//! its guard range anyway.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest degree for which `S_n`/`A_n`/derangement enumeration is allowed.
pub const MAX_ENUM_DEGREE: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image table {0:?} is not a bijection of 1..={1}")]
    NotABijection(Vec<usize>, usize),
    #[error("permutation degree must be at least 1")]
    EmptyImageTable,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("enumeration degree {0} exceeds the supported maximum {MAX_ENUM_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("point {0} is outside 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("cycle notation parse error: {0}")]
    BadCycleNotation(String),
    #[error("permutation of degree {0} is not an element of A_{1}")]
    WrongGroup(usize, usize),
}

/// A permutation of `{1, …, n}`, stored as a 0-based image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// The identity on `{1, …, n}`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from a 1-based image table: `table[i-1] = i^σ`.
    pub fn from_images(table: &[usize]) -> Result<Self, PermError> {
        let n = table.len();
        if n == 0 {
            return Err(PermError::EmptyImageTable);
        }
        if n > u8::MAX as usize {
            return Err(PermError::DegreeOutOfRange(n));
        }
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &im in table {
            if im < 1 || im > n || seen[im - 1] {
                return Err(PermError::NotABijection(table.to_vec(), n));
            }
            seen[im - 1] = true;
            images.push((im - 1) as u8);
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles on 1-based
    /// points, e.g. `&[vec![1, 2, 3], vec![4, 5]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut p = Permutation::identity(n);
        if n == 0 {
            return Err(PermError::EmptyImageTable);
        }
        let mut touched = vec![false; n];
        for cycle in cycles {
            for window in 0..cycle.len() {
                let from = cycle[window];
                let to = cycle[(window + 1) % cycle.len()];
                if from < 1 || from > n {
                    return Err(PermError::PointOutOfRange(from, n));
                }
                if to < 1 || to > n {
                    return Err(PermError::PointOutOfRange(to, n));
                }
                if touched[from - 1] {
                    return Err(PermError::BadCycleNotation(format!(
                        "point {from} appears in more than one cycle"
                    )));
                }
                touched[from - 1] = true;
                p.images[from - 1] = (to - 1) as u8;
            }
        }
        // Disjointness of the cycles guarantees the table above remains a
        // bijection; rebuild through the validating constructor regardless.
        Permutation::from_images(&p.one_based_images())
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let trimmed = text.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| PermError::BadCycleNotation(format!("expected '(' in {rest:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(PermError::BadCycleNotation(format!(
                    "unexpected text {:?}",
                    &rest[..open]
                )));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| PermError::BadCycleNotation("unbalanced '('".into()))?;
            let inner = &rest[open + 1..close];
            let mut cycle = Vec::new();
            for token in inner.split_whitespace() {
                let point: usize = token
                    .parse()
                    .map_err(|_| PermError::BadCycleNotation(format!("bad point {token:?}")))?;
                cycle.push(point);
            }
            if !cycle.is_empty() {
                cycle.dedup();
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    /// Number of points the permutation acts on.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.degree(), "point {i} out of range");
        self.images[i - 1] as usize + 1
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// The 1-based image table.
    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`: `i^(self·other) = (i^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Conjugate `t⁻¹·self·t`, i.e. the action of `t` on `self` by relabeling
    /// points: `(i^t)^(self^t) = (i^self)^t`.
    pub fn conjugate(&self, t: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != t.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), t.degree()));
        }
        let mut images = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            images[t.images[i] as usize] = t.images[self.images[i] as usize];
        }
        Ok(Permutation { images })
    }

    /// `true` iff no point is fixed.
    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x as usize)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.images[at] as usize;
            }
        }
        if (n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.images[at] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Disjoint cycles on 1-based points, fixed points omitted, each cycle
    /// rotated to start at its smallest point, cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                cycle.push(at + 1);
                at = self.images[at] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, point) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{point}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[deg {}]{}", self.degree(), self)
    }
}

/// Serialized form: the 1-based image table, e.g. `[2, 3, 1]` for `(1 2 3)`.
impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.one_based_images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let table = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&table).map_err(D::Error::custom)
    }
}

/// Cycle notation with an explicit degree is ambiguous ("(1 2)" could live in
/// any `S_n`), so `FromStr` deduces the degree as the largest mentioned point.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max_point = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().unwrap_or(0))
            .max()
            .unwrap_or(1);
        Permutation::parse_cycles(max_point.max(1), s)
    }
}

/// Index of a group element within the fixed lexicographic enumeration of
/// `A_n` (see [`AlternatingGroup::enumerate`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementIndex(pub u32);

impl ElementIndex {
    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }
}

/// All permutations of degree `n` in lexicographic order of their image
/// tables (the identity comes first).
fn enumerate_symmetric(n: usize) -> Result<Vec<Permutation>, PermError> {
    if n == 0 {
        return Err(PermError::EmptyImageTable);
    }
    if n > MAX_ENUM_DEGREE {
        return Err(PermError::DegreeOutOfRange(n));
    }
    let mut out = Vec::new();
    let mut table = vec![0u8; n];
    let mut used = vec![false; n];
    fn rec(depth: usize, n: usize, table: &mut [u8], used: &mut [bool], out: &mut Vec<Permutation>) {
        if depth == n {
            out.push(Permutation {
                images: table.to_vec(),
            });
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                table[depth] = x as u8;
                rec(depth + 1, n, table, used, out);
                used[x] = false;
            }
        }
    }
    rec(0, n, &mut table, &mut used, &mut out);
    Ok(out)
}

/// All even permutations of degree `n`, lexicographic by image table.
pub fn enumerate_alternating(n: usize) -> Result<Vec<Permutation>, PermError> {
    Ok(enumerate_symmetric(n)?
        .into_iter()
        .filter(Permutation::is_even)
        .collect())
}

/// All derangements (fixed-point-free permutations) of degree `n`.
pub fn enumerate_derangements(n: usize) -> Result<Vec<Permutation>, PermError> {
    Ok(enumerate_symmetric(n)?
        .into_iter()
        .filter(Permutation::is_derangement)
        .collect())
}

/// The connection set `E_n`: even derangements of degree `n`, lexicographic.
pub fn enumerate_even_derangements(n: usize) -> Result<Vec<Permutation>, PermError> {
    Ok(enumerate_symmetric(n)?
        .into_iter()
        .filter(|p| p.is_derangement() && p.is_even())
        .collect())
}

/// All permutations of degree `n` (the full symmetric group), lexicographic.
pub fn enumerate_full_symmetric(n: usize) -> Result<Vec<Permutation>, PermError> {
    enumerate_symmetric(n)
}

/// The alternating group `A_n` with a fixed element order and O(1) lookup
/// from permutation to [`ElementIndex`].
///
/// The enumeration is lexicographic on image tables, so index 0 is always the
/// identity and indices are stable across runs.
#[derive(Clone)]
pub struct AlternatingGroup {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl AlternatingGroup {
    pub fn new(n: usize) -> Result<Self, PermError> {
        let elements = enumerate_alternating(n)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Ok(AlternatingGroup { n, elements, index })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `|A_n| = n!/2` (with the degenerate `|A_1| = 1`).
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: ElementIndex) -> &Permutation {
        &self.elements[idx.as_usize()]
    }

    pub fn index_of(&self, p: &Permutation) -> Result<ElementIndex, PermError> {
        self.index
            .get(p)
            .map(|&i| ElementIndex(i))
            .ok_or(PermError::WrongGroup(p.degree(), self.n))
    }

    pub fn identity_index(&self) -> ElementIndex {
        ElementIndex(0)
    }
}

/// `true` iff conjugating every element of `set` by every element of the full
/// symmetric group of the same degree lands back in `set`.
pub fn closed_under_symmetric_conjugation(set: &[Permutation]) -> Result<bool, PermError> {
    let Some(first) = set.first() else {
        return Ok(true);
    };
    let n = first.degree();
    let members: std::collections::HashSet<&Permutation> = set.iter().collect();
    for t in enumerate_symmetric(n)? {
        for p in set {
            if !members.contains(&p.conjugate(&t)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(cycles: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(n, cycles).unwrap()
    }

    #[test]
    fn identity_laws() {
        let id = Permutation::identity(5);
        let c = perm("(1 2 3 4 5)", 5);
        assert!(id.is_identity());
        assert_eq!(id.compose(&c).unwrap(), c);
        assert_eq!(c.compose(&id).unwrap(), c);
        assert_eq!(c.compose(&c.inverse()).unwrap(), id);
        assert_eq!(c.inverse().compose(&c).unwrap(), id);
    }

    #[test]
    fn right_action_composition_order() {
        // With right actions, (1 2 3 4 5) squared is (1 3 5 2 4).
        let c = perm("(1 2 3 4 5)", 5);
        let c2 = c.compose(&c).unwrap();
        assert_eq!(c2, perm("(1 3 5 2 4)", 5));
        assert_eq!(c2.to_string(), "(1 3 5 2 4)");
        // i^(στ) = (i^σ)^τ on a mixed pair.
        let s = perm("(1 2)(3 4)", 5);
        let st = s.compose(&c).unwrap();
        for i in 1..=5 {
            assert_eq!(st.image(i), c.image(s.image(i)));
        }
    }

    #[test]
    fn conjugation_relabels_points() {
        let p = perm("(1 2 3)", 3);
        let t = perm("(1 2)", 3);
        assert_eq!(p.conjugate(&t).unwrap(), perm("(1 3 2)", 3));
        // Conjugation preserves cycle type, derangement status and sign.
        let q = perm("(1 2 3 4 5)", 5);
        for t in enumerate_full_symmetric(5).unwrap() {
            let qc = q.conjugate(&t).unwrap();
            assert_eq!(qc.cycle_type(), q.cycle_type());
            assert_eq!(qc.sign(), q.sign());
            assert_eq!(qc.is_derangement(), q.is_derangement());
        }
    }

    #[test]
    fn sign_matches_cycle_structure() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(perm("(1 2)", 4).sign(), -1);
        assert_eq!(perm("(1 2 3)", 4).sign(), 1);
        assert_eq!(perm("(1 2 3 4)", 4).sign(), -1);
        assert_eq!(perm("(1 2)(3 4)", 4).sign(), 1);
    }

    #[test]
    fn sign_is_multiplicative_exhaustively_up_to_degree_5() {
        for n in 1..=5 {
            let all = enumerate_full_symmetric(n).unwrap();
            for p in &all {
                for q in &all {
                    assert_eq!(p.compose(q).unwrap().sign(), p.sign() * q.sign());
                }
            }
        }
    }

    #[test]
    fn sign_is_multiplicative_sampled_degree_6() {
        use rand::prelude::*;
        let all = enumerate_full_symmetric(6).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..2_000 {
            let p = all.choose(&mut rng).unwrap();
            let q = all.choose(&mut rng).unwrap();
            assert_eq!(p.compose(q).unwrap().sign(), p.sign() * q.sign());
        }
    }

    #[test]
    fn group_and_derangement_counts() {
        // (n, |S_n| via enumeration, |A_n|, |D_n|, |E_n|)
        let expected = [
            (3, 6, 3, 2, 2),
            (4, 24, 12, 9, 3),
            (5, 120, 60, 44, 24),
            (6, 720, 360, 265, 130),
            (7, 5040, 2520, 1854, 930),
        ];
        for (n, sym, alt, der, even_der) in expected {
            assert_eq!(enumerate_full_symmetric(n).unwrap().len(), sym);
            assert_eq!(enumerate_alternating(n).unwrap().len(), alt);
            assert_eq!(enumerate_derangements(n).unwrap().len(), der);
            assert_eq!(enumerate_even_derangements(n).unwrap().len(), even_der, "E_{n}");
        }
    }

    #[test]
    fn even_derangements_of_degree_4_are_the_double_transpositions() {
        let e4 = enumerate_even_derangements(4).unwrap();
        let expected = vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4), perm("(1 4)(2 3)", 4)];
        let mut got = e4.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn even_derangements_of_degree_5_are_the_5_cycles() {
        let e5 = enumerate_even_derangements(5).unwrap();
        assert_eq!(e5.len(), 24);
        assert!(e5.iter().all(|p| p.cycle_type() == vec![5]));
    }

    #[test]
    fn even_derangements_of_degree_6_cycle_types() {
        let e6 = enumerate_even_derangements(6).unwrap();
        let mut by_type = std::collections::HashMap::new();
        for p in &e6 {
            *by_type.entry(p.cycle_type()).or_insert(0usize) += 1;
        }
        assert_eq!(by_type.get(&vec![4, 2]), Some(&90));
        assert_eq!(by_type.get(&vec![3, 3]), Some(&40));
        assert_eq!(by_type.len(), 2);
    }

    #[test]
    fn connection_sets_are_conjugation_closed() {
        for n in 3..=6 {
            let en = enumerate_even_derangements(n).unwrap();
            assert!(closed_under_symmetric_conjugation(&en).unwrap(), "E_{n}");
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_deterministic() {
        let a5 = AlternatingGroup::new(5).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.element(ElementIndex(0)).is_identity());
        let again = AlternatingGroup::new(5).unwrap();
        assert_eq!(a5.elements(), again.elements());
        let mut sorted = a5.elements().to_vec();
        sorted.sort();
        assert_eq!(sorted.as_slice(), a5.elements());
        for (i, p) in a5.elements().iter().enumerate() {
            assert_eq!(a5.index_of(p).unwrap(), ElementIndex(i as u32));
        }
    }

    #[test]
    fn index_lookup_rejects_foreign_elements() {
        let a5 = AlternatingGroup::new(5).unwrap();
        let odd = perm("(1 2)", 5);
        assert!(matches!(a5.index_of(&odd), Err(PermError::WrongGroup(5, 5))));
    }

    #[test]
    fn degree_guard() {
        assert!(matches!(
            enumerate_alternating(9),
            Err(PermError::DegreeOutOfRange(9))
        ));
        assert!(matches!(
            enumerate_even_derangements(9),
            Err(PermError::DegreeOutOfRange(9))
        ));
    }

    #[test]
    fn invalid_image_tables_are_rejected() {
        assert!(Permutation::from_images(&[]).is_err());
        assert!(Permutation::from_images(&[1, 1, 3]).is_err());
        assert!(Permutation::from_images(&[0, 1, 2]).is_err());
        assert!(Permutation::from_images(&[1, 2, 4]).is_err());
        assert!(Permutation::from_images(&[1, 2, 3]).is_ok());
    }

    #[test]
    fn cycle_notation_round_trip() {
        let cases = ["()", "(1 2 3)", "(1 2 3)(4 5)", "(1 3 5 2 4)", "(2 4)(3 6 5)"];
        for text in cases {
            let p = Permutation::parse_cycles(6, text).unwrap();
            assert_eq!(p.to_string(), text);
            let back = Permutation::parse_cycles(6, &p.to_string()).unwrap();
            assert_eq!(p, back);
        }
        assert_eq!(Permutation::identity(6).to_string(), "()");
    }

    #[test]
    fn from_str_infers_degree() {
        let p: Permutation = "(1 2 3)(4 5)".parse().unwrap();
        assert_eq!(p.degree(), 5);
        assert_eq!(p, perm("(1 2 3)(4 5)", 5));
    }

    #[test]
    fn serde_uses_one_based_image_tables() {
        let p = perm("(1 2 3)", 3);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[2,3,1]");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let p = Permutation::identity(4);
        let q = Permutation::identity(5);
        assert_eq!(p.compose(&q), Err(PermError::DegreeMismatch(4, 5)));
        assert_eq!(p.conjugate(&q), Err(PermError::DegreeMismatch(4, 5)));
    }

    #[test]
    fn cycle_type_and_parity_of_even_derangements() {
        // Every element of E_n is an even derangement, by construction.
        for n in 3..=6 {
            for p in enumerate_even_derangements(n).unwrap() {
                assert!(p.is_even());
                assert!(p.is_derangement());
                assert!(p.cycle_type().iter().all(|&len| len >= 2));
            }
        }
    }
}
