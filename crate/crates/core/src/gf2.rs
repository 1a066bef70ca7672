//! Bit vectors over GF(2) and the NEPS basis they form.
//!
//! A [`BitVector`] packs one basis row into a `u64`; coordinate `j`
//! (1-based, as written left to right in `"1101"`) lives in bit `j - 1`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Widest tuple the packed representation can hold.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("tuple length must be between 1 and {MAX_LEN}, got {0}")]
    BadLength(usize),
    #[error("invalid character {0:?} in bit string; only '0' and '1' are allowed")]
    BadChar(char),
    #[error("row {index} has length {found}, expected n = {expected}")]
    RaggedRow {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {0} is the all-zero tuple, which a NEPS basis may not contain")]
    ZeroRow(usize),
    #[error("row {second} duplicates row {first}; a basis is a set of distinct tuples")]
    DuplicateRow { first: usize, second: usize },
    #[error("a basis needs at least one row")]
    Empty,
    #[error("construct_basis needs n >= 2, got n = {0}")]
    ConstructTooSmall(usize),
    #[error("construct_basis needs an odd weight k, got k = {0}")]
    ConstructEvenWeight(usize),
    #[error("construct_basis needs 1 <= k < n, got n = {n}, k = {k}")]
    ConstructWeightTooLarge { n: usize, k: usize },
    #[error("basis JSON: {0}")]
    Json(String),
}

/// One element of GF(2)^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u64,
    len: u8,
}

impl BitVector {
    pub fn zeros(len: usize) -> Result<Self, Gf2Error> {
        if len == 0 || len > MAX_LEN {
            return Err(Gf2Error::BadLength(len));
        }
        Ok(Self {
            bits: 0,
            len: len as u8,
        })
    }

    /// Builds a vector from explicit 0/1 entries, coordinate 1 first.
    pub fn from_bits(bits: &[bool]) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            v.set(i + 1, b);
        }
        Ok(v)
    }

    /// Raw constructor: bit `i` of `word` is coordinate `i + 1`.
    pub fn from_word(word: u64, len: usize) -> Result<Self, Gf2Error> {
        let mut v = Self::zeros(len)?;
        v.bits = word & Self::mask(len);
        Ok(v)
    }

    fn mask(len: usize) -> u64 {
        if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn word(&self) -> u64 {
        self.bits
    }

    /// Coordinate `j`, 1-based.
    pub fn get(&self, j: usize) -> bool {
        assert!(j >= 1 && j <= self.len(), "coordinate {j} out of range");
        self.bits >> (j - 1) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j >= 1 && j <= self.len(), "coordinate {j} out of range");
        if value {
            self.bits |= 1 << (j - 1);
        } else {
            self.bits &= !(1 << (j - 1));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Number of ones, written s(β) in the NEPS literature.
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn last(&self) -> bool {
        self.get(self.len())
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len()).map(move |j| self.get(j))
    }

    /// Coordinates (1-based) where the vector is one.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&j| self.get(j)).collect()
    }

    /// Appends one coordinate at the end.
    pub fn push(&self, bit: bool) -> Result<Self, Gf2Error> {
        let mut out = Self::zeros(self.len() + 1)?;
        out.bits = self.bits;
        out.set(out.len(), bit);
        Ok(out)
    }

    /// Swaps coordinates `a` and `b`.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut out = *self;
        let (x, y) = (self.get(a), self.get(b));
        out.set(a, y);
        out.set(b, x);
        out
    }
}

impl std::ops::BitXor for BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.len, rhs.len, "length mismatch in GF(2) addition");
        Self {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Gf2Error::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bits(&bits)
    }
}

pub fn weight(beta: &BitVector) -> usize {
    beta.weight()
}

/// Parity class of the row weights of a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityClass {
    AllEven,
    AllOdd,
    Mixed,
}

impl ParityClass {
    pub fn is_uniform(self) -> bool {
        !matches!(self, ParityClass::Mixed)
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityClass::AllEven => "all_even",
            ParityClass::AllOdd => "all_odd",
            ParityClass::Mixed => "mixed",
        })
    }
}

/// An ordered set of distinct nonzero tuples of common length `n`.
///
/// Row order is kept exactly as given: it never changes the graph, but it
/// fixes the order of products and the bytes of every exported file.
#[derive(Clone, PartialEq, Eq)]
pub struct Basis {
    n: usize,
    rows: Vec<BitVector>,
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

impl Basis {
    pub fn new(n: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_LEN {
            return Err(Gf2Error::BadLength(n));
        }
        if rows.is_empty() {
            return Err(Gf2Error::Empty);
        }
        let mut seen = std::collections::HashMap::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Gf2Error::RaggedRow {
                    index: i,
                    expected: n,
                    found: row.len(),
                });
            }
            if row.is_zero() {
                return Err(Gf2Error::ZeroRow(i));
            }
            if let Some(&first) = seen.get(row) {
                return Err(Gf2Error::DuplicateRow { first, second: i });
            }
            seen.insert(*row, i);
        }
        Ok(Self { n, rows })
    }

    /// Parses rows written as bit strings; `n` is taken from the first row.
    pub fn from_strs<S: AsRef<str>>(rows: &[S]) -> Result<Self, Gf2Error> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = parsed.first().map(BitVector::len).ok_or(Gf2Error::Empty)?;
        Self::new(n, parsed)
    }

    /// Rows of the n×n identity: the Cartesian product of n copies of P3.
    pub fn identity(n: usize) -> Result<Self, Gf2Error> {
        let rows = (1..=n)
            .map(|j| {
                let mut v = BitVector::zeros(n)?;
                v.set(j, true);
                Ok(v)
            })
            .collect::<Result<Vec<_>, Gf2Error>>()?;
        Self::new(n, rows)
    }

    /// Rows of J − I (all ones except the diagonal). Needs n >= 2.
    pub fn all_ones_minus_identity(n: usize) -> Result<Self, Gf2Error> {
        let rows = (1..=n)
            .map(|j| {
                let mut v = BitVector::from_word(u64::MAX, n)?;
                v.set(j, false);
                Ok(v)
            })
            .collect::<Result<Vec<_>, Gf2Error>>()?;
        Self::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// m = |Ω|.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitVector> {
        self.rows.iter()
    }

    /// Applies the coordinate swap `a <-> b` to every row.
    pub fn swap_coordinates(&self, a: usize, b: usize) -> Self {
        Self {
            n: self.n,
            rows: self.rows.iter().map(|r| r.swapped(a, b)).collect(),
        }
    }

    /// Common row weight, if every row has the same weight.
    pub fn uniform_weight(&self) -> Option<usize> {
        let k = self.rows[0].weight();
        self.rows.iter().all(|r| r.weight() == k).then_some(k)
    }

    pub fn to_file(&self) -> BasisFile {
        BasisFile {
            n: self.n,
            rows: self.rows.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Gf2Error> {
        let file: BasisFile =
            serde_json::from_str(text).map_err(|e| Gf2Error::Json(e.to_string()))?;
        file.try_into()
    }

    /// Pretty JSON in the `{"n": .., "rows": [..]}` layout.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_file()).expect("basis serializes");
        serde_json::to_string_pretty(&value).expect("basis serializes")
    }
}

impl<'a> IntoIterator for &'a Basis {
    type Item = &'a BitVector;
    type IntoIter = std::slice::Iter<'a, BitVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.rows.iter()
    }
}

/// On-disk form of a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisFile {
    pub n: usize,
    pub rows: Vec<String>,
}

impl TryFrom<BasisFile> for Basis {
    type Error = Gf2Error;

    fn try_from(file: BasisFile) -> Result<Self, Self::Error> {
        if file.n == 0 || file.n > MAX_LEN {
            return Err(Gf2Error::BadLength(file.n));
        }
        let rows = file
            .rows
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let found = s.chars().count();
                if found != file.n {
                    return Err(Gf2Error::RaggedRow {
                        index,
                        expected: file.n,
                        found,
                    });
                }
                s.parse::<BitVector>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Basis::new(file.n, rows)
    }
}

/// Row rank over GF(2) by Gaussian elimination on packed words.
pub fn rank_gf2(basis: &Basis) -> usize {
    rank_of_words(basis.iter().map(BitVector::word))
}

/// Rank of an arbitrary list of packed rows (zero rows allowed).
pub fn rank_of_words(words: impl IntoIterator<Item = u64>) -> usize {
    // pivots[b] holds a reduced row whose highest set bit is b
    let mut pivots = [0u64; 64];
    let mut rank = 0;
    for mut w in words {
        while w != 0 {
            let top = 63 - w.leading_zeros() as usize;
            if pivots[top] == 0 {
                pivots[top] = w;
                rank += 1;
                break;
            }
            w ^= pivots[top];
        }
    }
    rank
}

/// Componentwise sum of all rows mod 2.
pub fn column_sum(basis: &Basis) -> BitVector {
    let word = basis.iter().fold(0u64, |acc, r| acc ^ r.word());
    BitVector::from_word(word, basis.n()).expect("basis length is valid")
}

pub fn parity_class(basis: &Basis) -> ParityClass {
    let odd = basis.iter().filter(|r| r.weight() % 2 == 1).count();
    if odd == basis.len() {
        ParityClass::AllOdd
    } else if odd == 0 {
        ParityClass::AllEven
    } else {
        ParityClass::Mixed
    }
}

/// Minimum row weight `k` and the rows attaining it, in stored order.
pub fn min_weight_subset(basis: &Basis) -> (usize, Basis) {
    let k = basis
        .iter()
        .map(BitVector::weight)
        .min()
        .expect("basis is nonempty");
    let rows = basis.iter().copied().filter(|r| r.weight() == k).collect();
    let star = Basis::new(basis.n(), rows).expect("subset of a valid basis is valid");
    (k, star)
}

/// Builds an n-row basis whose rows all have weight `k` and whose GF(2)
/// rank is `n`.
///
/// Grows the 2×2 identity one coordinate at a time. Each step pads the
/// existing rows with a zero and appends `(δ, 1)`, where `δ` has ones in
/// its first `k - 1` positions; the new row is independent because it is
/// the only one with a one in the last column. When `k` reaches `n - 1`
/// (so `n` is even) the answer is J − I, which is invertible over GF(2)
/// for even order since (J − I)² = I there.
pub fn construct_basis(n: usize, k: usize) -> Result<Basis, Gf2Error> {
    if n < 2 {
        return Err(Gf2Error::ConstructTooSmall(n));
    }
    if k.is_multiple_of(2) {
        return Err(Gf2Error::ConstructEvenWeight(k));
    }
    if k >= n {
        return Err(Gf2Error::ConstructWeightTooLarge { n, k });
    }
    if n > MAX_LEN {
        return Err(Gf2Error::BadLength(n));
    }

    if n == 2 {
        return Basis::identity(2);
    }
    if k == n - 1 {
        return Basis::all_ones_minus_identity(n);
    }

    // smallest size the recursion bottoms out at for this k
    let (mut size, mut rows) = if k == 1 {
        (2, Basis::identity(2)?.rows)
    } else {
        (k + 1, Basis::all_ones_minus_identity(k + 1)?.rows)
    };
    while size < n {
        let mut extended = rows
            .iter()
            .map(|r| r.push(false))
            .collect::<Result<Vec<_>, _>>()?;
        let mut delta = BitVector::zeros(size)?;
        for j in 1..k {
            delta.set(j, true);
        }
        extended.push(delta.push(true)?);
        rows = extended;
        size += 1;
    }
    Basis::new(n, rows)
}

/// All nonzero vectors of GF(2)^n in increasing word order.
pub fn nonzero_vectors(n: usize) -> Result<Vec<BitVector>, Gf2Error> {
    if n == 0 || n > 20 {
        return Err(Gf2Error::BadLength(n));
    }
    (1u64..(1u64 << n))
        .map(|w| BitVector::from_word(w, n))
        .collect()
}

/// Distinctness check used by callers that build row lists by hand.
pub fn has_duplicates(rows: &[BitVector]) -> bool {
    let mut seen = HashSet::with_capacity(rows.len());
    !rows.iter().all(|r| seen.insert(*r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn basis(rows: &[&str]) -> Basis {
        Basis::from_strs(rows).unwrap()
    }

    /// Rank from the size of the row span: |span| = 2^rank. Enumerates all
    /// subset sums, so it shares nothing with elimination.
    fn span_rank_oracle(rows: &[u64]) -> usize {
        let m = rows.len();
        let mut span = HashSet::new();
        for mask in 0u64..(1 << m) {
            let mut acc = 0;
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc ^= r;
                }
            }
            span.insert(acc);
        }
        span.len().trailing_zeros() as usize
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&bv("100")), 1);
        for row in Basis::all_ones_minus_identity(4).unwrap().iter() {
            assert_eq!(weight(row), 3);
        }
        assert_eq!(weight(&bv("0000")), 0);
    }

    #[test]
    fn bit_order_is_left_to_right() {
        let v = bv("1101");
        assert!(v.get(1) && v.get(2) && !v.get(3) && v.get(4));
        assert_eq!(v.to_string(), "1101");
        assert_eq!(v.support(), vec![1, 2, 4]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_gf2(&Basis::identity(3).unwrap()), 3);
        assert_eq!(rank_gf2(&Basis::all_ones_minus_identity(4).unwrap()), 4);
        // 011 + 101 = 110
        let jmi3 = Basis::all_ones_minus_identity(3).unwrap();
        let words: Vec<u64> = jmi3.iter().map(|r| r.word()).collect();
        assert_eq!(span_rank_oracle(&words), 2);
        assert_eq!(rank_gf2(&jmi3), 2);
    }

    #[test]
    fn column_sum_examples() {
        assert_eq!(
            column_sum(&Basis::identity(5).unwrap()).to_string(),
            "11111"
        );
        assert_eq!(
            column_sum(&Basis::all_ones_minus_identity(4).unwrap()).to_string(),
            "1111"
        );
        assert_eq!(
            column_sum(&Basis::all_ones_minus_identity(5).unwrap()).to_string(),
            "00000"
        );
        assert_eq!(column_sum(&basis(&["11"])).to_string(), "11");
    }

    #[test]
    fn parity_examples() {
        assert_eq!(
            parity_class(&basis(&["100", "010", "001", "111"])),
            ParityClass::AllOdd
        );
        assert_eq!(parity_class(&basis(&["110", "011"])), ParityClass::AllEven);
        assert_eq!(parity_class(&basis(&["10", "11"])), ParityClass::Mixed);
    }

    #[test]
    fn min_weight_examples() {
        let (k, star) = min_weight_subset(&basis(&["100", "010", "001", "111"]));
        assert_eq!(k, 1);
        assert_eq!(star, basis(&["100", "010", "001"]));

        let jmi = Basis::all_ones_minus_identity(4).unwrap();
        let (k, star) = min_weight_subset(&jmi);
        assert_eq!((k, &star), (3, &jmi));

        let (k, star) = min_weight_subset(&basis(&["111"]));
        assert_eq!((k, star), (3, basis(&["111"])));
    }

    #[test]
    fn min_weight_preserves_order() {
        let (_, star) = min_weight_subset(&basis(&["011", "111", "100", "010"]));
        assert_eq!(star, basis(&["100", "010"]));
    }

    #[test]
    fn construct_examples() {
        assert_eq!(construct_basis(2, 1).unwrap(), basis(&["10", "01"]));
        assert_eq!(
            construct_basis(4, 3).unwrap(),
            Basis::all_ones_minus_identity(4).unwrap()
        );
        let b = construct_basis(3, 1).unwrap();
        assert_eq!(b, basis(&["100", "010", "001"]));
        let words: Vec<u64> = b.iter().map(|r| r.word()).collect();
        assert_eq!(span_rank_oracle(&words), 3);
    }

    #[test]
    fn construct_unrolls_from_j_minus_i() {
        // k = 3 starts at J - I of order 4, then appends (1,1,0,0,1)
        let b = construct_basis(5, 3).unwrap();
        assert_eq!(b, basis(&["01110", "10110", "11010", "11100", "11001"]));
    }

    #[test]
    fn construct_rejects_bad_parameters() {
        assert_eq!(construct_basis(1, 1), Err(Gf2Error::ConstructTooSmall(1)));
        assert_eq!(construct_basis(4, 2), Err(Gf2Error::ConstructEvenWeight(2)));
        assert_eq!(
            construct_basis(3, 3),
            Err(Gf2Error::ConstructWeightTooLarge { n: 3, k: 3 })
        );
    }

    #[test]
    fn construct_invariants_small_n() {
        for n in 2..=10 {
            for k in (1..n).step_by(2) {
                let b = construct_basis(n, k).unwrap();
                assert_eq!(b.len(), n);
                assert!(b.iter().all(|r| r.weight() == k), "n={n} k={k}");
                assert_eq!(rank_gf2(&b), n, "n={n} k={k}");
                let words: Vec<u64> = b.iter().map(|r| r.word()).collect();
                assert_eq!(span_rank_oracle(&words), n);
                assert!(!column_sum(&b).is_zero(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn construct_large_n_is_full_rank() {
        let b = construct_basis(64, 31).unwrap();
        assert_eq!(rank_gf2(&b), 64);
        assert!(b.iter().all(|r| r.weight() == 31));
    }

    #[test]
    fn json_round_trip_and_layout() {
        let b = Basis::all_ones_minus_identity(4).unwrap();
        let text = b.to_json();
        assert_eq!(
            text,
            "{\n  \"n\": 4,\n  \"rows\": [\n    \"0111\",\n    \"1011\",\n    \"1101\",\n    \"1110\"\n  ]\n}"
        );
        assert_eq!(Basis::from_json(&text).unwrap(), b);
    }

    #[test]
    fn json_rejections() {
        assert_eq!(
            Basis::from_json(r#"{"n": 3, "rows": ["100", "000"]}"#),
            Err(Gf2Error::ZeroRow(1))
        );
        assert_eq!(
            Basis::from_json(r#"{"n": 3, "rows": ["100", "010", "100"]}"#),
            Err(Gf2Error::DuplicateRow {
                first: 0,
                second: 2
            })
        );
        assert_eq!(
            Basis::from_json(r#"{"n": 3, "rows": ["100", "01"]}"#),
            Err(Gf2Error::RaggedRow {
                index: 1,
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            Basis::from_json(r#"{"n": 2, "rows": ["1x"]}"#),
            Err(Gf2Error::BadChar('x'))
        );
        assert_eq!(
            Basis::from_json(r#"{"n": 2, "rows": []}"#),
            Err(Gf2Error::Empty)
        );
        assert!(matches!(
            Basis::from_json(r#"{"n": 2}"#),
            Err(Gf2Error::Json(_))
        ));
    }

    fn arb_rows(n: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(1u64..(1 << n), 1..8)
    }

    proptest! {
        #[test]
        fn weight_matches_naive_count(n in 1usize..=4, w in 0u64..16) {
            let w = w & ((1 << n) - 1);
            let v = BitVector::from_word(w, n).unwrap();
            let naive = v.to_string().chars().filter(|&c| c == '1').count();
            prop_assert_eq!(weight(&v), naive);
        }

        #[test]
        fn rank_agrees_with_span_oracle(n in 1usize..=6, words in arb_rows(6)) {
            let words: Vec<u64> = words.iter().map(|w| w & ((1 << n) - 1)).collect();
            prop_assert_eq!(rank_of_words(words.iter().copied()), span_rank_oracle(&words));
        }

        #[test]
        fn rank_invariant_under_permutation_and_dedup(
            words in arb_rows(5),
            seed in any::<u64>(),
        ) {
            let mut shuffled = words.clone();
            // cheap deterministic shuffle
            let len = shuffled.len();
            for i in (1..len).rev() {
                let j = (seed.rotate_left(i as u32) % (i as u64 + 1)) as usize;
                shuffled.swap(i, j);
            }
            let mut dedup = words.clone();
            dedup.sort_unstable();
            dedup.dedup();
            let r = rank_of_words(words.iter().copied());
            prop_assert_eq!(r, rank_of_words(shuffled));
            prop_assert_eq!(r, rank_of_words(dedup));
        }

        #[test]
        fn min_weight_subset_partitions(words in arb_rows(5)) {
            let mut words = words;
            words.sort_unstable();
            words.dedup();
            let rows: Vec<_> = words.iter().map(|&w| BitVector::from_word(w, 5).unwrap()).collect();
            let b = Basis::new(5, rows).unwrap();
            let (k, star) = min_weight_subset(&b);
            prop_assert!(star.iter().all(|r| r.weight() == k));
            let rest = b.iter().filter(|r| !star.rows().contains(r));
            for r in rest {
                prop_assert!(r.weight() > k);
            }
        }
    }
}
