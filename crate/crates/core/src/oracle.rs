//! Dense state-vector verifier.
//!
//! Basis index bit `j` is the value of qubit `j`. Everything here is computed
//! from amplitudes only, so it can be used to check the symbolic code.

use std::fmt;

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::{BinMatrix, BitVec};
use crate::mapping::FermionQubitMapping;
use crate::pauli::{Eigenstate, PauliString, ProductState};

pub const TOLERANCE: f64 = 1e-9;

/// Largest qubit count the dense routines accept.
pub const MAX_QUBITS: usize = 20;

/// Largest qubit count accepted by the dense anticommutator check.
pub const CAR_LIMIT: usize = 16;

/// Largest qubit count swept exhaustively by default.
pub const EXHAUSTIVE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} qubits is beyond the dense oracle limit")]
    TooLarge(usize),
    #[error("projected vacuum vanished on every basis vector")]
    Degenerate,
}

/// State vector with `2^n` complex amplitudes.
#[derive(Clone, PartialEq)]
pub struct DenseStateOf<T> {
    n: usize,
    amps: Vec<Complex<T>>,
}

fn c<T: Float>(v: f64) -> T {
    T::from(v).expect("float conversion")
}

fn i_pow<T: Float>(k: u8) -> Complex<T> {
    match k % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    }
}

fn mask_of(v: &BitVec) -> usize {
    v.to_u64() as usize
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > MAX_QUBITS {
        Err(OracleError::TooLarge(n))
    } else {
        Ok(())
    }
}

/// Amplitudes `(<0|e>, <1|e>)` of a single-qubit eigenstate.
pub fn eigenvector<T: Float>(e: Eigenstate) -> [Complex<T>; 2] {
    let r = c::<T>(std::f64::consts::FRAC_1_SQRT_2);
    let re = |v: T| Complex::new(v, T::zero());
    match e {
        Eigenstate::ZPlus => [re(T::one()), re(T::zero())],
        Eigenstate::ZMinus => [re(T::zero()), re(T::one())],
        Eigenstate::XPlus => [re(r), re(r)],
        Eigenstate::XMinus => [re(r), re(-r)],
        Eigenstate::YPlus => [re(r), Complex::new(T::zero(), r)],
        Eigenstate::YMinus => [re(r), Complex::new(T::zero(), -r)],
    }
}

impl<T: Float> DenseStateOf<T> {
    pub fn zero(n: usize) -> Self {
        DenseStateOf { n, amps: vec![Complex::zero(); 1 << n] }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut s = Self::zero(n);
        s.amps[index] = Complex::one();
        s
    }

    pub fn basis_bits(bits: &BitVec) -> Self {
        Self::basis(bits.len(), mask_of(bits))
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Self {
        assert_eq!(amps.len(), 1 << n, "amplitude count must be 2^n");
        DenseStateOf { n, amps }
    }

    /// Kronecker product of the single-qubit vectors times `i^phase`.
    pub fn from_product(s: &ProductState) -> Self {
        let n = s.n();
        let vecs: Vec<[Complex<T>; 2]> = s.qubits().iter().map(|&e| eigenvector(e)).collect();
        let global = i_pow::<T>(s.phase());
        let amps = (0..1usize << n)
            .map(|k| {
                vecs.iter()
                    .enumerate()
                    .fold(global, |acc, (q, v)| acc * v[(k >> q) & 1])
            })
            .collect();
        DenseStateOf { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn scaled(&self, k: Complex<T>) -> Self {
        DenseStateOf { n: self.n, amps: self.amps.iter().map(|a| a * k).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        DenseStateOf {
            n: self.n,
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-Complex::one()))
    }

    /// Largest amplitude difference.
    pub fn distance(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn normalized(&self) -> Option<Self> {
        let nrm = self.norm();
        (nrm > c(TOLERANCE)).then(|| self.scaled(Complex::new(T::one() / nrm, T::zero())))
    }

    /// Multiplies by the global phase that makes the first non-negligible
    /// amplitude real and positive.
    pub fn phase_fixed(&self) -> Self {
        match self.amps.iter().find(|a| a.norm() > c(TOLERANCE)) {
            Some(a) => self.scaled(a.conj() / Complex::new(a.norm(), T::zero())),
            None => self.clone(),
        }
    }

    /// Index of the single non-negligible amplitude, if there is exactly one.
    pub fn as_basis_vector(&self) -> Option<(usize, Complex<T>)> {
        let mut hits = self.amps.iter().enumerate().filter(|(_, a)| a.norm() > c(TOLERANCE));
        let first = hits.next()?;
        hits.next().is_none().then(|| (first.0, *first.1))
    }

    /// Rank (1 or 2) of the `2 x 2^(n-1)` matrix splitting `qubit` from the rest.
    pub fn schmidt_rank_of_qubit(&self, qubit: usize) -> usize {
        let bit = 1usize << qubit;
        let rows: Vec<(Complex<T>, Complex<T>)> = (0..self.amps.len())
            .filter(|k| k & bit == 0)
            .map(|k| (self.amps[k], self.amps[k | bit]))
            .collect();
        // Rank one iff every 2x2 minor vanishes.
        for (a, b) in &rows {
            for (c2, d) in &rows {
                if (a * d - b * c2).norm() > c(TOLERANCE) {
                    return 2;
                }
            }
        }
        1
    }

    /// Whether every qubit factors out of the state.
    pub fn is_product(&self) -> bool {
        (0..self.n).all(|q| self.schmidt_rank_of_qubit(q) == 1)
    }
}

impl<T: Float + fmt::Display> fmt::Debug for DenseStateOf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseState[")?;
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() > c(TOLERANCE) {
                write!(f, " {k:0w$b}:{:.6}{:+.6}i", a.re, a.im, w = self.n.max(1))?;
            }
        }
        write!(f, " ]")
    }
}

/// `p |s>` straight from the definition `X^x Z^z |k> = (-1)^{z.k} |k ^ x>`.
pub fn apply_pauli<T: Float>(p: &PauliString, s: &DenseStateOf<T>) -> Result<DenseStateOf<T>, OracleError> {
    if p.n() != s.n {
        return Err(OracleError::DimensionMismatch(p.n(), s.n));
    }
    let x = mask_of(p.x());
    let z = mask_of(p.z());
    let global = i_pow::<T>(p.phase());
    let mut out = vec![Complex::zero(); s.amps.len()];
    for (k, &a) in s.amps.iter().enumerate() {
        let sign = if (z & k).count_ones() % 2 == 1 { -global } else { global };
        out[k ^ x] = a * sign;
    }
    Ok(DenseStateOf { n: s.n, amps: out })
}

fn apply<T: Float>(p: &PauliString, s: &DenseStateOf<T>) -> DenseStateOf<T> {
    apply_pauli(p, s).expect("oracle size mismatch")
}

/// Dense action of `p` as `(target index, amplitude)` per basis column.
fn monomial_columns(p: &PauliString) -> Vec<(usize, Complex<f64>)> {
    let x = mask_of(p.x());
    let z = mask_of(p.z());
    let global = i_pow::<f64>(p.phase());
    (0..1usize << p.n())
        .map(|k| (k ^ x, if (z & k).count_ones() % 2 == 1 { -global } else { global }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CarViolation {
    /// Operator `k` is not Hermitian or not unitary.
    NotHermitian(usize),
    /// `{G_i, G_j} != 2 delta_ij` for this pair.
    Anticommutator(usize, usize),
    /// Some operator has too many qubits for the dense check.
    TooLarge,
}

impl fmt::Display for CarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarViolation::NotHermitian(k) => write!(f, "Gamma_{k} is not Hermitian"),
            CarViolation::Anticommutator(i, j) => write!(f, "{{Gamma_{i}, Gamma_{j}}} != 2 delta"),
            CarViolation::TooLarge => write!(f, "too many qubits for the dense check"),
        }
    }
}

/// Checks `{G_i, G_j} = 2 delta_ij` and `G_i^dagger = G_i` on every basis state.
pub fn check_car(m: &FermionQubitMapping, tol: f64) -> Result<(), CarViolation> {
    check_car_ops(&m.majoranas().cloned().collect::<Vec<_>>(), tol)
}

pub fn check_car_ops(ops: &[PauliString], tol: f64) -> Result<(), CarViolation> {
    if ops.iter().any(|p| p.n() > CAR_LIMIT) {
        return Err(CarViolation::TooLarge);
    }
    let cols: Vec<Vec<(usize, Complex<f64>)>> = ops
        .iter()
        .map(monomial_columns)
        .collect();
    for (k, col) in cols.iter().enumerate() {
        for (src, &(dst, a)) in col.iter().enumerate() {
            // <dst|G|src> = a must equal conj(<src|G|dst>).
            let (back, b) = col[dst];
            if back != src || (b - a.conj()).norm() > tol {
                return Err(CarViolation::NotHermitian(k));
            }
        }
    }
    for i in 0..cols.len() {
        for j in i..cols.len() {
            for src in 0..cols[i].len() {
                // G_i G_j |src> + G_j G_i |src>
                let (mj, aj) = cols[j][src];
                let (t1, a1) = cols[i][mj];
                let (mi, ai) = cols[i][src];
                let (t2, a2) = cols[j][mi];
                let mut out: Vec<(usize, Complex<f64>)> = vec![(t1, a1 * aj)];
                if t2 == t1 {
                    out[0].1 += a2 * ai;
                } else {
                    out.push((t2, a2 * ai));
                }
                let expected = if i == j { 2.0 } else { 0.0 };
                let ok = out.iter().all(|&(t, a)| {
                    let target = if t == src { Complex::new(expected, 0.0) } else { Complex::zero() };
                    (a - target).norm() <= tol
                });
                let hits_src = out.iter().any(|&(t, _)| t == src);
                if !ok || (expected != 0.0 && !hits_src) {
                    return Err(CarViolation::Anticommutator(i, j));
                }
            }
        }
    }
    Ok(())
}

/// `S_i |psi> = -i G_{2i} G_{2i+1} |psi>`, applied densely.
fn apply_stabilizer<T: Float>(m: &FermionQubitMapping, i: usize, s: &DenseStateOf<T>) -> DenseStateOf<T> {
    let (a, b) = m.pair(i);
    apply(a, &apply(b, s)).scaled(i_pow(3))
}

fn project_vacuum<T: Float>(m: &FermionQubitMapping, s: &DenseStateOf<T>) -> DenseStateOf<T> {
    let half = Complex::new(c::<T>(0.5), T::zero());
    (0..m.n()).fold(s.clone(), |acc, i| acc.add(&apply_stabilizer(m, i, &acc)).scaled(half))
}

/// Common `+1` eigenstate of the vacuum stabilizers, normalized, with the
/// first non-negligible amplitude real and positive.
pub fn dense_vacuum(m: &FermionQubitMapping) -> Result<DenseStateOf<f64>, OracleError> {
    dense_vacuum_of(m)
}

pub fn dense_vacuum_of<T: Float>(m: &FermionQubitMapping) -> Result<DenseStateOf<T>, OracleError> {
    let n = m.n();
    check_size(n)?;
    for k in 0..1usize << n {
        let proj = project_vacuum(m, &DenseStateOf::<T>::basis(n, k));
        if let Some(v) = proj.normalized() {
            return Ok(v.phase_fixed());
        }
    }
    Err(OracleError::Degenerate)
}

/// `G_0^{f_0} G_2^{f_1} ... |vac>`, rightmost factor applied first.
pub fn dense_fock<T: Float>(m: &FermionQubitMapping, vacuum: &DenseStateOf<T>, f: &BitVec) -> DenseStateOf<T> {
    (0..m.n())
        .rev()
        .filter(|&i| f.get(i))
        .fold(vacuum.clone(), |s, i| apply(&m.pair(i).0, &s))
}

/// Which occupation vectors a sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

impl Sweep {
    /// Exhaustive up to [`EXHAUSTIVE_LIMIT`] qubits, otherwise 4096 samples.
    pub fn default_for(n: usize, seed: u64) -> Sweep {
        if n <= EXHAUSTIVE_LIMIT {
            Sweep::Exhaustive
        } else {
            Sweep::Sampled { count: 4096, seed }
        }
    }

    pub fn vectors(self, n: usize) -> Vec<BitVec> {
        match self {
            Sweep::Exhaustive => (0..1u64 << n).map(|k| BitVec::from_u64(n, k)).collect(),
            Sweep::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut out = vec![BitVec::zeros(n)];
                out.extend((0..n).map(|i| BitVec::unit(n, i)));
                while out.len() < count {
                    out.push(BitVec::random(n, &mut rng));
                }
                out
            }
        }
    }

    pub fn describe(self, n: usize) -> String {
        match self {
            Sweep::Exhaustive => format!("all 2^{n} Fock states"),
            Sweep::Sampled { count, .. } => format!("all 2^{n} Fock states (sampled {count})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FailureKind {
    Vacuum(OracleError),
    NotNormalized,
    WrongEigenvalue { stabilizer: usize },
    NotOrthogonal { other: BitVec },
    WrongBasisVector { expected: BitVec },
    WrongPhase,
    Mismatch,
}

/// Offending occupation vector with the size of the deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleFailure {
    pub kind: FailureKind,
    pub f: Option<BitVec>,
    pub deviation: f64,
}

impl fmt::Display for OracleFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FailureKind::Vacuum(e) => write!(f, "vacuum: {e}")?,
            FailureKind::NotNormalized => write!(f, "state not normalized")?,
            FailureKind::WrongEigenvalue { stabilizer } => write!(f, "wrong eigenvalue of stabilizer {stabilizer}")?,
            FailureKind::NotOrthogonal { other } => write!(f, "not orthogonal to |{other}>")?,
            FailureKind::WrongBasisVector { expected } => write!(f, "not the basis vector |{expected}>")?,
            FailureKind::WrongPhase => write!(f, "amplitude is not +1")?,
            FailureKind::Mismatch => write!(f, "states differ")?,
        }
        if let Some(v) = &self.f {
            write!(f, " at f={v}")?;
        }
        write!(f, " (deviation {:.3e})", self.deviation)
    }
}

fn fail(kind: FailureKind, f: Option<&BitVec>, deviation: f64) -> OracleFailure {
    OracleFailure { kind, f: f.cloned(), deviation }
}

fn vacuum_or_fail(m: &FermionQubitMapping) -> Result<DenseStateOf<f64>, OracleFailure> {
    dense_vacuum(m).map_err(|e| fail(FailureKind::Vacuum(e), None, f64::NAN))
}

/// Norms and stabilizer eigenvalues `(-1)^{f_i}`; explicit Gram matrix up to
/// six qubits.
pub fn verify_fock_basis(m: &FermionQubitMapping) -> Result<(), OracleFailure> {
    verify_fock_basis_with(m, Sweep::default_for(m.n(), 0))
}

pub fn verify_fock_basis_with(m: &FermionQubitMapping, sweep: Sweep) -> Result<(), OracleFailure> {
    let vac = vacuum_or_fail(m)?;
    let fs = sweep.vectors(m.n());
    let mut states = Vec::new();
    for f in &fs {
        let psi = dense_fock(m, &vac, f);
        let dev = (psi.norm() - 1.0).abs();
        if dev > TOLERANCE {
            return Err(fail(FailureKind::NotNormalized, Some(f), dev));
        }
        for i in 0..m.n() {
            let sign = if f.get(i) { -1.0 } else { 1.0 };
            let dev = apply_stabilizer(m, i, &psi).distance(&psi.scaled(Complex::new(sign, 0.0)));
            if dev > TOLERANCE {
                return Err(fail(FailureKind::WrongEigenvalue { stabilizer: i }, Some(f), dev));
            }
        }
        if m.n() <= 6 {
            states.push(psi);
        }
    }
    for (a, sa) in states.iter().enumerate() {
        for (b, sb) in states.iter().enumerate().skip(a + 1) {
            let dev = sa.inner(sb).norm();
            if dev > TOLERANCE {
                return Err(fail(FailureKind::NotOrthogonal { other: fs[b].clone() }, Some(&fs[a]), dev));
            }
        }
    }
    Ok(())
}

/// Every Fock state equals `|G f>` with amplitude exactly `+1`.
pub fn verify_linear(m: &FermionQubitMapping, g: &BinMatrix) -> Result<(), OracleFailure> {
    verify_affine_with(m, g, &BitVec::zeros(g.n()), Sweep::default_for(m.n(), 0))
}

/// Every Fock state equals `|G (f ^ b)>` with amplitude exactly `+1`.
pub fn verify_affine(m: &FermionQubitMapping, g: &BinMatrix, b: &BitVec) -> Result<(), OracleFailure> {
    verify_affine_with(m, g, b, Sweep::default_for(m.n(), 0))
}

pub fn verify_affine_with(m: &FermionQubitMapping, g: &BinMatrix, b: &BitVec, sweep: Sweep) -> Result<(), OracleFailure> {
    let vac = vacuum_or_fail(m)?;
    for f in sweep.vectors(m.n()) {
        let psi = dense_fock(m, &vac, &f);
        let target = g.mat_vec(&f.xor(b)).expect("matrix size");
        let expected = DenseStateOf::basis_bits(&target);
        let dev = psi.distance(&expected);
        if dev > TOLERANCE {
            let kind = match psi.as_basis_vector() {
                Some((k, _)) if k == mask_of(&target) => FailureKind::WrongPhase,
                _ => FailureKind::WrongBasisVector { expected: target },
            };
            return Err(fail(kind, Some(&f), dev));
        }
    }
    Ok(())
}

/// Compares dense Fock states with symbolic product states, relative phases
/// included. The global phase is fixed once from the vacuum.
pub fn verify_against_symbolic(
    m: &FermionQubitMapping,
    symbolic: impl Fn(&BitVec) -> ProductState,
    sweep: Sweep,
) -> Result<(), OracleFailure> {
    let vac = vacuum_or_fail(m)?;
    let sym_vac = DenseStateOf::<f64>::from_product(&symbolic(&BitVec::zeros(m.n())));
    let overlap = sym_vac.inner(&vac);
    let dev = (overlap.norm() - 1.0).abs();
    if dev > TOLERANCE {
        return Err(fail(FailureKind::Mismatch, Some(&BitVec::zeros(m.n())), dev));
    }
    for f in sweep.vectors(m.n()) {
        let dense = dense_fock(m, &vac, &f);
        let sym = DenseStateOf::<f64>::from_product(&symbolic(&f)).scaled(overlap);
        let dev = dense.distance(&sym);
        if dev > TOLERANCE {
            return Err(fail(FailureKind::Mismatch, Some(&f), dev));
        }
    }
    Ok(())
}

/// Fock states from creation operators `a_i^dag = (G_2i - i G_2i+1)/2` applied
/// in ascending mode order agree with the even-Majorana products and with the
/// `(-i G_2i+1)` products, for Jordan-Wigner operators on `n` modes.
pub fn verify_lemma1(n: usize) -> Result<(), OracleFailure> {
    let m = FermionQubitMapping::jordan_wigner(n);
    let vac = vacuum_or_fail(&m)?;
    let half = Complex::new(0.5, 0.0);
    let create = |i: usize, s: &DenseStateOf<f64>| {
        let (a, b) = m.pair(i);
        apply(a, s).sub(&apply(b, s).scaled(Complex::new(0.0, 1.0))).scaled(half)
    };
    for f in Sweep::Exhaustive.vectors(n) {
        let ladder = (0..n).rev().filter(|&i| f.get(i)).fold(vac.clone(), |s, i| create(i, &s));
        let even = dense_fock(&m, &vac, &f);
        let odd = (0..n)
            .rev()
            .filter(|&i| f.get(i))
            .fold(vac.clone(), |s, i| apply(&m.pair(i).1, &s).scaled(Complex::new(0.0, -1.0)));
        for other in [&even, &odd] {
            let dev = ladder.distance(other);
            if dev > TOLERANCE {
                return Err(fail(FailureKind::Mismatch, Some(&f), dev));
            }
        }
    }
    Ok(())
}
