//! Linear algebra over F2 on packed bit vectors, plus the update, flip,
//! parity and remainder sets of an invertible matrix.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix is singular over F2")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("bravyi_kitaev needs a power of two, got {0}")]
    UnsupportedSize(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(WORD)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Bits taken from the low `len` bits of `value`, bit `i` at index `i`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len.min(WORD) {
            v.set(i, (value >> i) & 1 == 1);
        }
        v
    }

    /// Inverse of [`BitVec::from_u64`]. Panics past 64 bits.
    pub fn to_u64(&self) -> u64 {
        assert!(self.len <= WORD, "bit vector too long for u64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, rng.gen());
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut r = self.clone();
        r.xor_assign(other);
        r
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn or(&self, other: &BitVec) -> BitVec {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        BitVec {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn not(&self) -> BitVec {
        let mut r = BitVec {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        r.clear_tail();
        r
    }

    /// Popcount of `self & other`.
    pub fn and_count(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "bit vector length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.and_count(other) % 2 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + t)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones_iter().next()
    }

    /// Keeps the bits whose index is set in `mask`.
    pub fn masked(&self, mask: &BitVec) -> BitVec {
        self.and(mask)
    }

    /// Bit vector `w` with `w[perm[i]] = self[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVec {
        assert_eq!(perm.len(), self.len);
        let mut r = BitVec::zeros(self.len);
        for i in self.ones_iter() {
            r.set(perm[i], true);
        }
        r
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut r = BitVec::zeros(self.len + other.len);
        for i in self.ones_iter() {
            r.set(i, true);
        }
        for i in other.ones_iter() {
            r.set(self.len + i, true);
        }
        r
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        let mut r = BitVec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                r.set(i - start, true);
            }
        }
        r
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl FromStr for BitVec {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut v = BitVec::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Gf2Error::Parse {
                        line: 1,
                        msg: format!("unexpected character {other:?} in bit string"),
                    })
                }
            }
        }
        Ok(v)
    }
}

/// Square binary matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    n: usize,
    rows: Vec<BitVec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedMatrix {
    Identity,
    /// Lower triangular ones, diagonal included.
    Parity,
    BravyiKitaev,
    /// Strictly lower triangular ones.
    Pi,
}

impl BinMatrix {
    pub fn zeros(n: usize) -> Self {
        BinMatrix { n, rows: vec![BitVec::zeros(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        BinMatrix { n, rows: (0..n).map(|i| BitVec::unit(n, i)).collect() }
    }

    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Gf2Error::DimensionMismatch { expected: n, got: r.len() });
            }
        }
        Ok(BinMatrix { n, rows })
    }

    pub fn from_columns(cols: Vec<BitVec>) -> Result<Self, Gf2Error> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn named(kind: NamedMatrix, n: usize) -> Result<Self, Gf2Error> {
        Ok(match kind {
            NamedMatrix::Identity => Self::identity(n),
            NamedMatrix::Parity => Self::lower_ones(n, true),
            NamedMatrix::Pi => Self::lower_ones(n, false),
            NamedMatrix::BravyiKitaev => Self::bravyi_kitaev(n)?,
        })
    }

    fn lower_ones(n: usize, diagonal: bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..i {
                m.set(i, j, true);
            }
            if diagonal {
                m.set(i, i, true);
            }
        }
        m
    }

    /// B_1 = [1]; B_2m = [[B_m, E], [0, B_m]] where E has its first row set
    /// to ones. Qubit 0 carries the total parity.
    fn bravyi_kitaev(n: usize) -> Result<Self, Gf2Error> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Gf2Error::UnsupportedSize(n));
        }
        let mut m = Self::identity(1);
        while m.n < n {
            let h = m.n;
            let mut next = Self::zeros(2 * h);
            for i in 0..h {
                for j in 0..h {
                    next.set(i, j, m.get(i, j));
                    next.set(h + i, h + j, m.get(i, j));
                }
            }
            for j in h..2 * h {
                next.set(0, j, true);
            }
            m = next;
        }
        Ok(m)
    }

    /// Deterministic random element of GL_n(F2): a product of random row
    /// additions and swaps applied to the identity.
    pub fn random_invertible(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_invertible_with(n, &mut rng)
    }

    pub fn random_invertible_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut m = Self::identity(n);
        if n < 2 {
            return m;
        }
        for _ in 0..4 * n * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            if rng.gen_bool(0.8) {
                let src = m.rows[j].clone();
                m.rows[i].xor_assign(&src);
            } else {
                m.rows.swap(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_bools(&(0..self.n).map(|i| self.get(i, j)).collect::<Vec<_>>())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones_iter() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mat_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.n {
            return Err(Gf2Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>()))
    }

    pub fn mul(&self, other: &BinMatrix) -> Result<BinMatrix, Gf2Error> {
        if other.n != self.n {
            return Err(Gf2Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(self.n);
                for k in r.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BinMatrix { n: self.n, rows })
    }

    /// Gauss-Jordan elimination on `[G | I]`.
    pub fn invert(&self) -> Result<BinMatrix, Gf2Error> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r].get(col)).ok_or(Gf2Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r].get(col) {
                    let (pa, pi) = (a[col].clone(), inv[col].clone());
                    a[r].xor_assign(&pa);
                    inv[r].xor_assign(&pi);
                }
            }
        }
        Ok(BinMatrix { n, rows: inv })
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn rank(&self) -> usize {
        rank_of(self.rows.clone())
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> BinMatrix {
        let rows = self.rows[..k].iter().map(|r| r.slice(0, k)).collect();
        BinMatrix { n: k, rows }
    }

    pub fn parse(text: &str) -> Result<Self, Gf2Error> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        let mut rows = Vec::with_capacity(n);
        for (i, line) in lines.iter().enumerate() {
            let row: BitVec = line
                .parse()
                .map_err(|_| Gf2Error::Parse { line: i + 1, msg: "expected only 0 and 1".into() })?;
            if row.len() != n {
                return Err(Gf2Error::Parse {
                    line: i + 1,
                    msg: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            rows.push(row);
        }
        Ok(BinMatrix { n, rows })
    }
}

/// Rank over F2 of an arbitrary list of equal-length rows.
pub fn rank_of(mut rows: Vec<BitVec>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, BitVec::len);
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot);
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix({})", self.n)?;
        write!(f, "{self}")
    }
}

impl FromStr for BinMatrix {
    type Err = Gf2Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// Update, flip, parity and remainder sets of one mode, as bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UfprSets {
    pub update: BitVec,
    pub flip: BitVec,
    pub parity: BitVec,
    pub remainder: BitVec,
}

impl UfprSets {
    pub fn as_indices(&self) -> [Vec<usize>; 4] {
        [
            self.update.ones_iter().collect(),
            self.flip.ones_iter().collect(),
            self.parity.ones_iter().collect(),
            self.remainder.ones_iter().collect(),
        ]
    }
}

/// All four sets for every mode of `g`.
pub fn ufpr_table(g: &BinMatrix) -> Result<Vec<UfprSets>, Gf2Error> {
    let inv = g.invert()?;
    let n = g.n();
    let mut parity = BitVec::zeros(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let update = g.column(i);
        let flip = inv.row(i).clone();
        let remainder = flip.xor(&parity);
        out.push(UfprSets { update, flip: flip.clone(), parity: parity.clone(), remainder });
        parity.xor_assign(&flip);
    }
    Ok(out)
}

pub fn ufpr_sets(g: &BinMatrix, i: usize) -> Result<UfprSets, Gf2Error> {
    if i >= g.n() {
        return Err(Gf2Error::IndexOutOfRange { index: i, n: g.n() });
    }
    Ok(ufpr_table(g)?.swap_remove(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &BitVec) -> Vec<usize> {
        v.ones_iter().collect()
    }

    #[test]
    fn bitvec_basics() {
        let v: BitVec = "1011".parse().unwrap();
        assert_eq!(set(&v), vec![0, 2, 3]);
        assert_eq!(v.to_string(), "1011");
        let big = BitVec::from_indices(130, [0, 64, 129]);
        assert_eq!(set(&big), vec![0, 64, 129]);
        assert_eq!(big.not().count_ones(), 127);
        assert_eq!(BitVec::from_u64(5, 0b10110).to_u64(), 0b10110);
    }

    #[test]
    fn identity_inverse() {
        let i4 = BinMatrix::identity(4);
        assert_eq!(i4.invert().unwrap(), i4);
    }

    #[test]
    fn parity_inverse_is_bidiagonal() {
        let g = BinMatrix::named(NamedMatrix::Parity, 4).unwrap();
        let inv = g.invert().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(inv.get(i, j), i == j || i == j + 1, "({i},{j})");
            }
        }
        assert_eq!(g.mul(&inv).unwrap(), BinMatrix::identity(4));
    }

    #[test]
    fn zero_matrix_is_singular() {
        assert_eq!(BinMatrix::zeros(3).invert(), Err(Gf2Error::Singular));
    }

    #[test]
    fn named_small_matrices() {
        let p = BinMatrix::named(NamedMatrix::Parity, 3).unwrap();
        assert_eq!(p.to_string(), "100\n110\n111\n");
        let pi = BinMatrix::named(NamedMatrix::Pi, 3).unwrap();
        assert_eq!(pi.to_string(), "000\n100\n110\n");
        let bk = BinMatrix::named(NamedMatrix::BravyiKitaev, 4).unwrap();
        assert_eq!(bk.to_string(), "1111\n0100\n0011\n0001\n");
        assert!(BinMatrix::named(NamedMatrix::BravyiKitaev, 6).is_err());
    }

    #[test]
    fn ufpr_identity() {
        let s = ufpr_sets(&BinMatrix::identity(4), 2).unwrap();
        assert_eq!(s.as_indices(), [vec![2], vec![2], vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn ufpr_parity() {
        let g = BinMatrix::named(NamedMatrix::Parity, 4).unwrap();
        let s = ufpr_sets(&g, 1).unwrap();
        assert_eq!(s.as_indices(), [vec![1, 2, 3], vec![0, 1], vec![0], vec![1]]);
    }

    /// P(i) read from the rows of Pi * G^-1.
    #[test]
    fn parity_set_matches_pi_product() {
        for seed in 0..20 {
            let g = BinMatrix::random_invertible(7, seed);
            let pig = BinMatrix::named(NamedMatrix::Pi, 7).unwrap().mul(&g.invert().unwrap()).unwrap();
            for (i, s) in ufpr_table(&g).unwrap().iter().enumerate() {
                assert_eq!(&s.parity, pig.row(i));
            }
        }
    }

    #[test]
    fn mat_vec_examples() {
        let v: BitVec = "1011".parse().unwrap();
        assert_eq!(BinMatrix::identity(4).mat_vec(&v).unwrap(), v);
        let g = BinMatrix::named(NamedMatrix::Parity, 4).unwrap();
        assert_eq!(g.mat_vec(&"1000".parse().unwrap()).unwrap().to_string(), "1111");
        assert!(g.mat_vec(&BitVec::zeros(3)).is_err());
    }

    #[test]
    fn random_invertible_is_deterministic() {
        let a = BinMatrix::random_invertible(6, 1);
        assert_eq!(a, BinMatrix::random_invertible(6, 1));
        assert!(a.is_invertible());
    }

    #[test]
    fn matrix_text_round_trip() {
        let g = BinMatrix::random_invertible(9, 3);
        assert_eq!(g.to_string().parse::<BinMatrix>().unwrap(), g);
        assert!("10\n1".parse::<BinMatrix>().is_err());
        assert!("1x\n01".parse::<BinMatrix>().is_err());
    }
}
