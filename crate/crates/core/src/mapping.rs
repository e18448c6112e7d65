//! Fermion-qubit mappings: validation, vacua, Fock states, ladder operators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, One, Zero};
use thiserror::Error;

use crate::encoding::{majoranas_of_affine, AffineEncoding};
use crate::gf2::{BinMatrix, BitVec, Gf2Error, NamedMatrix};
use crate::oracle::{self, DenseStateOf};
use crate::pauli::{Eigenstate, PauliError, PauliString, ProductState, UnsignedPauli};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Some operator acts on the wrong number of qubits.
    WrongSize { operator: usize, n: usize },
    NotHermitian(usize),
    /// Distinct operators that commute.
    Commute(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongSize { operator, n } => write!(f, "Gamma_{operator} does not act on {n} qubits"),
            Violation::NotHermitian(k) => write!(f, "Gamma_{k} is not Hermitian"),
            Violation::Commute(i, j) => write!(f, "Gamma_{i} and Gamma_{j} commute"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MappingError {
    #[error("invalid mapping: {0}")]
    Invalid(Violation),
    #[error("mapping has not been validated")]
    NotValidated,
    #[error("vacuum is not a product state")]
    NonProduct { dense: Option<Box<DenseStateOf<f64>>> },
    #[error("index {index} out of range for {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("occupation vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

/// Exact complex dyadic `(re + im i) / 2^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GaussianDyadic {
    re: i64,
    im: i64,
    k: u32,
}

impl GaussianDyadic {
    pub fn new(re: i64, im: i64, k: u32) -> Self {
        let mut g = GaussianDyadic { re, im, k };
        g.reduce();
        g
    }

    pub fn i() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn parts(&self) -> (i64, i64, u32) {
        (self.re, self.im, self.k)
    }

    fn reduce(&mut self) {
        if self.re == 0 && self.im == 0 {
            self.k = 0;
        }
        while self.k > 0 && self.re % 2 == 0 && self.im % 2 == 0 {
            self.re /= 2;
            self.im /= 2;
            self.k -= 1;
        }
    }

    fn lift(&self, k: u32) -> (i64, i64) {
        let s = k - self.k;
        let f = 1i64.checked_shl(s).filter(|_| s < 62).expect("dyadic exponent overflow");
        (
            self.re.checked_mul(f).expect("dyadic overflow"),
            self.im.checked_mul(f).expect("dyadic overflow"),
        )
    }

    pub fn to_complex<T: Float>(&self) -> Complex<T> {
        let scale = T::from(2f64.powi(-(self.k as i32))).expect("float conversion");
        Complex::new(T::from(self.re).expect("float") * scale, T::from(self.im).expect("float") * scale)
    }
}

impl Add for GaussianDyadic {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let k = self.k.max(o.k);
        let (a, b) = self.lift(k);
        let (c, d) = o.lift(k);
        Self::new(a.checked_add(c).expect("dyadic overflow"), b.checked_add(d).expect("dyadic overflow"), k)
    }
}

impl Sub for GaussianDyadic {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for GaussianDyadic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im, self.k)
    }
}

impl Mul for GaussianDyadic {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = |x: i64, y: i64| x.checked_mul(y).expect("dyadic overflow");
        Self::new(m(self.re, o.re) - m(self.im, o.im), m(self.re, o.im) + m(self.im, o.re), self.k + o.k)
    }
}

impl Zero for GaussianDyadic {
    fn zero() -> Self {
        Self::new(0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl One for GaussianDyadic {
    fn one() -> Self {
        Self::new(1, 0, 0)
    }
}

impl fmt::Display for GaussianDyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = match self.im {
            1 => "i".to_string(),
            -1 => "-i".to_string(),
            v => format!("{v}i"),
        };
        let num = match (self.re, self.im) {
            (r, 0) => r.to_string(),
            (0, _) => imag,
            (r, i) if i < 0 => format!("({r}{imag})"),
            (r, _) => format!("({r}+{imag})"),
        };
        if self.k == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", 1u64 << self.k)
        }
    }
}

/// Coefficient ring for [`PauliSum`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> + Add<Output = Self> + Mul<Output = Self>
{
    /// `i^k`.
    fn i_pow(k: u8) -> Self;
    fn half() -> Self;
}

impl Coefficient for GaussianDyadic {
    fn i_pow(k: u8) -> Self {
        match k % 4 {
            0 => Self::new(1, 0, 0),
            1 => Self::new(0, 1, 0),
            2 => Self::new(-1, 0, 0),
            _ => Self::new(0, -1, 0),
        }
    }
    fn half() -> Self {
        Self::new(1, 0, 1)
    }
}

impl<T: Float + fmt::Debug> Coefficient for Complex<T> {
    fn i_pow(k: u8) -> Self {
        match k % 4 {
            0 => Complex::new(T::one(), T::zero()),
            1 => Complex::new(T::zero(), T::one()),
            2 => Complex::new(-T::one(), T::zero()),
            _ => Complex::new(T::zero(), -T::one()),
        }
    }
    fn half() -> Self {
        Complex::new(T::from(0.5).expect("float"), T::zero())
    }
}

/// Linear combination of Pauli strings keyed by their unsigned part. Each
/// coefficient multiplies the Hermitian letter form of its key.
#[derive(Clone, PartialEq)]
pub struct PauliSumOf<C> {
    n: usize,
    terms: BTreeMap<UnsignedPauli, C>,
}

impl<C: Coefficient> PauliSumOf<C> {
    pub fn zero(n: usize) -> Self {
        PauliSumOf { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_pauli(&PauliString::identity(n))
    }

    pub fn from_pauli(p: &PauliString) -> Self {
        Self::from_term(C::one(), p)
    }

    pub fn from_term(c: C, p: &PauliString) -> Self {
        let mut s = Self::zero(p.n());
        s.add_term(c, p);
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: C, p: &PauliString) {
        assert_eq!(p.n(), self.n, "Pauli sum size mismatch");
        let c = c * C::i_pow(p.sign_phase());
        let key = p.unsigned();
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Terms as `(coefficient, Hermitian string)` in sorted order.
    pub fn terms(&self) -> impl Iterator<Item = (&C, PauliString)> {
        self.terms.iter().map(|(k, c)| (c, k.to_hermitian()))
    }

    pub fn coefficient(&self, p: &UnsignedPauli) -> Option<&C> {
        self.terms.get(p)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(v.clone() * c.clone(), &k.to_hermitian());
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(v.clone(), &k.to_hermitian());
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let prod = ka.to_hermitian().multiply(&kb.to_hermitian());
                out.add_term(va.clone() * vb.clone(), &prod);
            }
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> PauliSumOf<D> {
        let mut out = PauliSumOf::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(f(v), &k.to_hermitian());
        }
        out
    }
}

impl PauliSumOf<GaussianDyadic> {
    pub fn to_complex<T: Float + fmt::Debug>(&self) -> PauliSumOf<Complex<T>> {
        self.map_coefficients(|c| c.to_complex())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for PauliSumOf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (k, c) in &self.terms {
            writeln!(f, "{c} * {k}")?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for PauliSumOf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k.to_string(), v))).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightStats {
    pub max: usize,
    pub mean: Ratio<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedMapping {
    JordanWigner,
    BravyiKitaev,
    Parity,
}

/// Ordered pairs `(G_2i, G_2i+1)` of Pauli strings representing Majoranas.
#[derive(Clone, PartialEq, Eq)]
pub struct FermionQubitMapping {
    n: usize,
    pairs: Vec<(PauliString, PauliString)>,
    validated: bool,
}

impl FermionQubitMapping {
    /// Builds and validates.
    pub fn new(pairs: Vec<(PauliString, PauliString)>) -> Result<Self, MappingError> {
        let mut m = Self::unchecked(pairs);
        m.validate().map_err(MappingError::Invalid)?;
        m.validated = true;
        Ok(m)
    }

    /// Builds without validating. Most operations then refuse to run.
    pub fn unchecked(pairs: Vec<(PauliString, PauliString)>) -> Self {
        FermionQubitMapping { n: pairs.len(), pairs, validated: false }
    }

    pub fn from_majoranas(ops: Vec<PauliString>) -> Result<Self, MappingError> {
        let mut it = ops.into_iter();
        let mut pairs = Vec::new();
        while let Some(a) = it.next() {
            let b = it.next().ok_or(MappingError::Parse { line: 0, msg: "odd number of operators".into() })?;
            pairs.push((a, b));
        }
        Self::new(pairs)
    }

    pub fn named(kind: NamedMapping, n: usize) -> Result<Self, MappingError> {
        Ok(match kind {
            NamedMapping::JordanWigner => Self::jordan_wigner(n),
            NamedMapping::BravyiKitaev => {
                majoranas_of_affine(&AffineEncoding::linear(BinMatrix::named(NamedMatrix::BravyiKitaev, n)?)?)
            }
            NamedMapping::Parity => {
                majoranas_of_affine(&AffineEncoding::linear(BinMatrix::named(NamedMatrix::Parity, n)?)?)
            }
        })
    }

    /// `G_2i = Z_0..Z_{i-1} X_i`, `G_2i+1 = Z_0..Z_{i-1} Y_i`.
    pub fn jordan_wigner(n: usize) -> Self {
        use crate::pauli::Pauli;
        let string = |i: usize, l: Pauli| {
            let mut f: Vec<(usize, Pauli)> = (0..i).map(|k| (k, Pauli::Z)).collect();
            f.push((i, l));
            PauliString::from_sparse(n, &f, 0)
        };
        let pairs = (0..n).map(|i| (string(i, Pauli::X), string(i, Pauli::Y))).collect();
        Self::new(pairs).expect("Jordan-Wigner strings satisfy the CAR")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn pairs(&self) -> &[(PauliString, PauliString)] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> &(PauliString, PauliString) {
        &self.pairs[i]
    }

    pub fn gamma(&self, k: usize) -> &PauliString {
        let (a, b) = &self.pairs[k / 2];
        if k % 2 == 0 {
            a
        } else {
            b
        }
    }

    pub fn majoranas(&self) -> impl Iterator<Item = &PauliString> {
        self.pairs.iter().flat_map(|(a, b)| [a, b])
    }

    /// Hermiticity of each operator, then pairwise anticommutation.
    pub fn validate(&self) -> Result<(), Violation> {
        let ops: Vec<&PauliString> = self.majoranas().collect();
        for (k, p) in ops.iter().enumerate() {
            if p.n() != self.n {
                return Err(Violation::WrongSize { operator: k, n: self.n });
            }
        }
        for (k, p) in ops.iter().enumerate() {
            if !p.is_hermitian() {
                return Err(Violation::NotHermitian(k));
            }
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !ops[i].anticommutes(ops[j]) {
                    return Err(Violation::Commute(i, j));
                }
            }
        }
        Ok(())
    }

    fn require_validated(&self) -> Result<(), MappingError> {
        if self.validated {
            Ok(())
        } else {
            Err(MappingError::NotValidated)
        }
    }

    /// `-i G_2i G_2i+1` for each mode.
    pub fn vacuum_stabilizers(&self) -> Result<Vec<PauliString>, MappingError> {
        self.require_validated()?;
        Ok(self.pairs.iter().map(|(a, b)| a.multiply(b).times_phase(3)).collect())
    }

    /// Product-state vacuum with phase 0. For each qubit, searches the
    /// stabilizer group for an element supported on that qubit alone.
    pub fn vacuum_state(&self) -> Result<ProductState, MappingError> {
        let stabs = self.vacuum_stabilizers()?;
        let n = self.n;
        let mut labels = Vec::with_capacity(n);
        for q in 0..n {
            match local_stabilizer(&stabs, q) {
                Some(p) => {
                    let l = p.letter(q);
                    labels.push(Eigenstate::new(l, p.sign_phase() == 0));
                }
                None => {
                    let dense = if n <= oracle::EXHAUSTIVE_LIMIT {
                        oracle::dense_vacuum(self).ok().map(Box::new)
                    } else {
                        None
                    };
                    return Err(MappingError::NonProduct { dense });
                }
            }
        }
        let vac = ProductState::new(labels, 0);
        debug_assert!(stabs.iter().all(|s| vac.eigenphase(s) == Some(0)));
        Ok(vac)
    }

    fn check_occupation(&self, f: &BitVec) -> Result<(), MappingError> {
        if f.len() != self.n {
            return Err(MappingError::WrongLength { expected: self.n, got: f.len() });
        }
        Ok(())
    }

    /// `G_0^{f_0} G_2^{f_1} ... |vac>`.
    pub fn fock_state(&self, f: &BitVec) -> Result<ProductState, MappingError> {
        let vac = self.vacuum_state()?;
        self.fock_state_from(&vac, f)
    }

    /// As [`Self::fock_state`] with a precomputed vacuum.
    pub fn fock_state_from(&self, vacuum: &ProductState, f: &BitVec) -> Result<ProductState, MappingError> {
        self.check_occupation(f)?;
        Ok((0..self.n)
            .rev()
            .filter(|&i| f.get(i))
            .fold(vacuum.clone(), |s, i| s.apply(&self.pairs[i].0)))
    }

    /// `(-i G_1)^{f_0} (-i G_3)^{f_1} ... |vac>`.
    pub fn fock_state_odd(&self, f: &BitVec) -> Result<ProductState, MappingError> {
        let vac = self.vacuum_state()?;
        self.check_occupation(f)?;
        Ok((0..self.n)
            .rev()
            .filter(|&i| f.get(i))
            .fold(vac, |s, i| s.apply(&self.pairs[i].1.times_phase(3))))
    }

    fn check_mode(&self, i: usize) -> Result<(), MappingError> {
        if i >= self.n {
            return Err(MappingError::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    fn ladder(&self, i: usize, dagger: bool) -> Result<PauliSum, MappingError> {
        self.require_validated()?;
        self.check_mode(i)?;
        let (a, b) = &self.pairs[i];
        let h = GaussianDyadic::half();
        let ih = GaussianDyadic::new(0, if dagger { -1 } else { 1 }, 1);
        Ok(PauliSum::from_term(h, a).plus(&PauliSum::from_term(ih, b)))
    }

    /// `A_i = (G_2i + i G_2i+1) / 2`.
    pub fn annihilation(&self, i: usize) -> Result<PauliSum, MappingError> {
        self.ladder(i, false)
    }

    /// `A_i^dag = (G_2i - i G_2i+1) / 2`.
    pub fn creation(&self, i: usize) -> Result<PauliSum, MappingError> {
        self.ladder(i, true)
    }

    /// `A_i^dag A_i`.
    pub fn number_operator(&self, i: usize) -> Result<PauliSum, MappingError> {
        Ok(self.creation(i)?.times(&self.annihilation(i)?))
    }

    /// Product of ladder operators, leftmost first; `(mode, true)` is a creation operator.
    pub fn transform_ladder_term(&self, ops: &[(usize, bool)]) -> Result<PauliSum, MappingError> {
        self.require_validated()?;
        let mut acc = PauliSum::identity(self.n);
        for &(i, dagger) in ops {
            acc = acc.times(&self.ladder(i, dagger)?);
        }
        Ok(acc)
    }

    /// `G_{k_1} G_{k_2} ...`.
    pub fn transform_majorana_monomial(&self, indices: &[usize]) -> Result<PauliString, MappingError> {
        let mut acc = PauliString::identity(self.n);
        for &k in indices {
            if k >= 2 * self.n {
                return Err(MappingError::IndexOutOfRange { index: k, n: 2 * self.n });
            }
            acc = acc.multiply(self.gamma(k));
        }
        Ok(acc)
    }

    pub fn weight_stats(&self) -> WeightStats {
        let weights: Vec<usize> = self.majoranas().map(PauliString::weight).collect();
        let total: usize = weights.iter().sum();
        WeightStats {
            max: weights.iter().copied().max().unwrap_or(0),
            mean: Ratio::new(total, weights.len().max(1)),
        }
    }

    /// Parses `n=<N>` then `pair <i>: <PAULI> ; <PAULI>` lines and validates.
    pub fn parse(text: &str) -> Result<Self, MappingError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let perr = |line: usize, msg: String| MappingError::Parse { line, msg };
        let (hl, header) = lines.next().ok_or_else(|| perr(1, "missing header".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| perr(hl, format!("expected n=<N>, got {header:?}")))?;
        let mut pairs = Vec::with_capacity(n);
        for (ln, line) in lines {
            let rest = line
                .strip_prefix("pair")
                .ok_or_else(|| perr(ln, "expected `pair <i>: ...`".into()))?;
            let (idx, ops) = rest.split_once(':').ok_or_else(|| perr(ln, "missing ':'".into()))?;
            let idx: usize = idx.trim().parse().map_err(|_| perr(ln, "bad pair index".into()))?;
            if idx != pairs.len() {
                return Err(perr(ln, format!("expected pair {}, got {idx}", pairs.len())));
            }
            let (a, b) = ops.split_once(';').ok_or_else(|| perr(ln, "missing ';'".into()))?;
            let pe = |e: PauliError| perr(ln, e.to_string());
            pairs.push((PauliString::parse(a, n).map_err(pe)?, PauliString::parse(b, n).map_err(pe)?));
        }
        if pairs.len() != n {
            return Err(perr(0, format!("expected {n} pairs, found {}", pairs.len())));
        }
        Self::new(pairs)
    }
}

/// Product of a subset of commuting stabilizers acting only on qubit `q`.
fn local_stabilizer(stabs: &[PauliString], q: usize) -> Option<PauliString> {
    let n = stabs.len();
    let mut off = BitVec::ones(stabs.first()?.n());
    off.set(q, false);
    // Rows: [x|z restricted off q] ++ [combination tag].
    let mut rows: Vec<(BitVec, BitVec)> = stabs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.x().and(&off).concat(&s.z().and(&off)), BitVec::unit(n, i)))
        .collect();
    let width = rows[0].0.len();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..n).find(|&r| rows[r].0.get(col)) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0.get(col) {
                row.0.xor_assign(&pivot.0);
                row.1.xor_assign(&pivot.1);
            }
        }
        rank += 1;
    }
    rows[rank..].iter().find_map(|(_, tag)| {
        let prod = tag
            .ones_iter()
            .fold(PauliString::identity(stabs[0].n()), |acc, i| acc.multiply(&stabs[i]));
        (!prod.is_identity_up_to_phase()).then_some(prod)
    })
}

impl fmt::Display for FermionQubitMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            writeln!(f, "pair {i}: {a} ; {b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FermionQubitMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FermionQubitMapping(")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({a}, {b})")?;
        }
        write!(f, ")")
    }
}

pub type PauliSum = PauliSumOf<GaussianDyadic>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    fn mapping(ops: &[&str], n: usize) -> FermionQubitMapping {
        FermionQubitMapping::from_majoranas(ops.iter().map(|s| p(s, n)).collect()).unwrap()
    }

    pub(crate) fn example5() -> FermionQubitMapping {
        mapping(&["+1 X0", "-1 Y0", "-1 Z0 X1", "-1 Z0 Y1"], 2)
    }

    pub(crate) fn m6() -> FermionQubitMapping {
        mapping(&["+1 X0", "-1 Z0 Y1", "+1 Z0 X1", "+1 Y0"], 2)
    }

    #[test]
    fn named_two_mode() {
        assert_eq!(FermionQubitMapping::jordan_wigner(2), mapping(&["+1 X0", "+1 Y0", "+1 Z0 X1", "+1 Z0 Y1"], 2));
        let bk = FermionQubitMapping::named(NamedMapping::BravyiKitaev, 2).unwrap();
        assert_eq!(bk, mapping(&["+1 X0", "+1 Y0 Z1", "-1 Y0 Y1", "+1 Y0 X1"], 2));
        assert!(FermionQubitMapping::named(NamedMapping::BravyiKitaev, 3).is_err());
    }

    #[test]
    fn parity_stabilizers_are_z_strings() {
        let m = FermionQubitMapping::named(NamedMapping::Parity, 3).unwrap();
        for s in m.vacuum_stabilizers().unwrap() {
            assert!(s.x().is_zero());
        }
    }

    #[test]
    fn validate_reports_pair() {
        assert!(FermionQubitMapping::jordan_wigner(8).validate().is_ok());
        let bad = FermionQubitMapping::unchecked(vec![(p("+1 X0", 2), p("+1 Y0", 2)), (p("+1 Z0 X1", 2), p("+1 X0", 2))]);
        assert_eq!(bad.validate(), Err(Violation::Commute(0, 3)));
        let nh = FermionQubitMapping::unchecked(vec![(p("+i X0", 1), p("+1 Y0", 1))]);
        assert_eq!(nh.validate(), Err(Violation::NotHermitian(0)));
        assert_eq!(nh.vacuum_stabilizers(), Err(MappingError::NotValidated));
    }

    #[test]
    fn stabilizer_examples() {
        let jw = FermionQubitMapping::jordan_wigner(3);
        let z: Vec<PauliString> = (0..3).map(|i| PauliString::single(3, i, Pauli::Z)).collect();
        assert_eq!(jw.vacuum_stabilizers().unwrap(), z);
        assert_eq!(example5().vacuum_stabilizers().unwrap(), vec![p("-1 Z0", 2), p("+1 Z1", 2)]);
        let s6 = m6().vacuum_stabilizers().unwrap();
        assert!(s6.iter().any(|s| !s.x().is_zero()));
    }

    #[test]
    fn vacuum_examples() {
        assert_eq!(FermionQubitMapping::jordan_wigner(3).vacuum_state().unwrap().symbols(), "000");
        assert_eq!(example5().vacuum_state().unwrap().symbols(), "10");
        match m6().vacuum_state() {
            Err(MappingError::NonProduct { dense: Some(d) }) => assert!(!d.is_product()),
            other => panic!("expected NonProduct, got {other:?}"),
        }
    }

    #[test]
    fn fock_examples() {
        let jw = FermionQubitMapping::jordan_wigner(4);
        let s = jw.fock_state(&"0110".parse().unwrap()).unwrap();
        assert_eq!((s.symbols().as_str(), s.phase()), ("0110", 0));
        assert_eq!(jw.fock_state(&BitVec::zeros(4)).unwrap(), jw.vacuum_state().unwrap());
        let s = example5().fock_state(&"11".parse().unwrap()).unwrap();
        assert_eq!((s.symbols().as_str(), s.phase()), ("01", 0));
    }

    #[test]
    fn ladder_examples() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let a1 = jw.annihilation(1).unwrap();
        assert_eq!(a1.to_string(), "1/2 * Z0 X1\ni/2 * Z0 Y1\n");
        for n in 1..5 {
            let jw = FermionQubitMapping::jordan_wigner(n);
            for i in 0..n {
                let expected = PauliSum::from_term(GaussianDyadic::half(), &PauliString::identity(n))
                    .plus(&PauliSum::from_term(-GaussianDyadic::half(), &PauliString::single(n, i, Pauli::Z)));
                assert_eq!(jw.number_operator(i).unwrap(), expected);
                assert!(jw.annihilation(i).unwrap().times(&jw.annihilation(i).unwrap()).is_zero());
            }
        }
        assert!(jw.annihilation(2).is_err());
    }

    #[test]
    fn dyadic_arithmetic() {
        let h = GaussianDyadic::half();
        assert_eq!(h + h, GaussianDyadic::one());
        assert_eq!(GaussianDyadic::i() * GaussianDyadic::i(), -GaussianDyadic::one());
        assert_eq!(GaussianDyadic::new(2, 4, 2).parts(), (1, 2, 1));
        assert_eq!(GaussianDyadic::new(3, -1, 2).to_string(), "(3-i)/4");
        assert_eq!(GaussianDyadic::new(0, -1, 1).to_string(), "-i/2");
        assert_eq!(GaussianDyadic::new(-3, 0, 0).to_string(), "-3");
    }

    #[test]
    fn jw_weights() {
        for n in 1..8 {
            let w = FermionQubitMapping::jordan_wigner(n).weight_stats();
            assert_eq!(w.max, n);
            // Weights 1,1,2,2,...,n,n.
            assert_eq!(w.mean, Ratio::new(n * (n + 1), 2 * n));
        }
    }

    #[test]
    fn text_round_trip() {
        for m in [FermionQubitMapping::jordan_wigner(3), example5(), m6()] {
            assert_eq!(FermionQubitMapping::parse(&m.to_string()).unwrap(), m);
        }
        assert!(FermionQubitMapping::parse("n=2\npair 0: +1 X0 ; +1 Y0\n").is_err());
        assert!(FermionQubitMapping::parse("n=1\npair 0: +1 X0 ; +1 X0\n").is_err());
    }

    #[test]
    fn complex_coefficients() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let c = jw.annihilation(0).unwrap().to_complex::<f64>();
        let (coef, _) = c.terms().nth(1).unwrap();
        assert_eq!(*coef, Complex::new(0.0, 0.5));
    }
}
