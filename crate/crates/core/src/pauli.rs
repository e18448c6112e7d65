//! Signed Pauli strings in symplectic form and symbolic product states.
//!
//! A [`PauliString`] stores `(x, z, phase)` and denotes
//! `i^phase * prod_j X_j^{x_j} * prod_j Z_j^{z_j}`. With this convention
//! `X_j Z_j = -i Y_j`, so a Hermitian `Y_j` carries one unit of phase.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::gf2::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("qubit count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot parse Pauli string {text:?}: {msg}")]
    Parse { text: String, msg: String },
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NONTRIVIAL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Pauli> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    /// Position among X, Y, Z; `None` for the identity.
    pub fn index(self) -> Option<usize> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(0),
            Pauli::Y => Some(1),
            Pauli::Z => Some(2),
        }
    }

    /// The letter completing `{a, b}` to `{X, Y, Z}`.
    pub fn third(a: Pauli, b: Pauli) -> Pauli {
        let (ax, az) = a.bits();
        let (bx, bz) = b.bits();
        Pauli::from_bits(ax ^ bx, az ^ bz)
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Phase `i^k` with `k` taken mod 4.
pub fn phase_symbol(k: u8) -> &'static str {
    match k % 4 {
        0 => "+1",
        1 => "+i",
        2 => "-1",
        _ => "-i",
    }
}

fn parse_phase_symbol(s: &str) -> Option<u8> {
    match s {
        "+1" | "1" | "+" => Some(0),
        "+i" | "i" => Some(1),
        "-1" | "-" => Some(2),
        "-i" => Some(3),
        _ => None,
    }
}

/// Pauli operator with its phase forgotten.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnsignedPauli {
    x: BitVec,
    z: BitVec,
}

impl UnsignedPauli {
    pub fn identity(n: usize) -> Self {
        UnsignedPauli { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn from_xz(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts differ in length");
        UnsignedPauli { x, z }
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, l: Pauli) {
        let (x, z) = l.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.n()).map(|q| self.get(q)).collect()
    }

    pub fn support(&self) -> BitVec {
        self.x.or(&self.z)
    }

    pub fn weight(&self) -> usize {
        self.support().count_ones()
    }

    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    pub fn anticommutes(&self, other: &UnsignedPauli) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1
    }

    /// The Hermitian representative with sign `+1` in letter form.
    pub fn to_hermitian(&self) -> PauliString {
        let y = (self.y_count() % 4) as u8;
        PauliString { x: self.x.clone(), z: self.z.clone(), phase: y }
    }

    /// `X^x Z^z` with phase 0, i.e. every `Y` read as `-iY`.
    pub fn to_hat(&self) -> PauliString {
        PauliString { x: self.x.clone(), z: self.z.clone(), phase: 0 }
    }
}

impl Ord for UnsignedPauli {
    /// Lexicographic on letters, qubit 0 first, `I < X < Y < Z`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n().cmp(&other.n()).then_with(|| {
            for q in 0..self.n() {
                match self.get(q).cmp(&other.get(q)) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for UnsignedPauli {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UnsignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, &self.x, &self.z)
    }
}

impl fmt::Debug for UnsignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnsignedPauli({self})")
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, x: &BitVec, z: &BitVec) -> fmt::Result {
    let support = x.or(z);
    if support.is_zero() {
        return f.write_str("I");
    }
    let mut first = true;
    for q in support.ones_iter() {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        write!(f, "{}{q}", Pauli::from_bits(x.get(q), z.get(q)))?;
    }
    Ok(())
}

/// Signed Pauli string `i^phase * X^x * Z^z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { x: BitVec::zeros(n), z: BitVec::zeros(n), phase: 0 }
    }

    pub fn from_xz(x: BitVec, z: BitVec, phase: u8) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts differ in length");
        PauliString { x, z, phase: phase % 4 }
    }

    /// Hermitian single-qubit Pauli `l` on qubit `q`.
    pub fn single(n: usize, q: usize, l: Pauli) -> Self {
        let mut u = UnsignedPauli::identity(n);
        u.set(q, l);
        u.to_hermitian()
    }

    /// `sign * (tensor product of letters)` with `sign = i^k`.
    pub fn from_letters(letters: &[Pauli], k: u8) -> Self {
        UnsignedPauli::from_letters(letters).to_hermitian().times_phase(k)
    }

    /// Product of Hermitian letters on the listed qubits, times `i^k`.
    pub fn from_sparse(n: usize, factors: &[(usize, Pauli)], k: u8) -> Self {
        let mut u = UnsignedPauli::identity(n);
        for &(q, l) in factors {
            u.set(q, l);
        }
        u.to_hermitian().times_phase(k)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        PauliString {
            x: BitVec::random(n, rng),
            z: BitVec::random(n, rng),
            phase: rng.gen_range(0..4),
        }
    }

    pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let p = Self::random(n, rng).unsigned().to_hermitian();
        if rng.gen() {
            p.neg()
        } else {
            p
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Coefficient `i^k` in front of the Hermitian letter form.
    pub fn sign_phase(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn unsigned(&self) -> UnsignedPauli {
        UnsignedPauli { x: self.x.clone(), z: self.z.clone() }
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize + self.y_count()) % 2 == 0
    }

    pub fn times_phase(&self, k: u8) -> Self {
        PauliString { x: self.x.clone(), z: self.z.clone(), phase: (self.phase + k % 4) % 4 }
    }

    pub fn neg(&self) -> Self {
        self.times_phase(2)
    }

    pub fn try_multiply(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::DimensionMismatch(self.n(), other.n()));
        }
        // Moving other's X factors left past self's Z factors costs (-1) per overlap.
        let swaps = self.z.and_count(&other.x);
        let phase = (self.phase as usize + other.phase as usize + 2 * (swaps % 2)) % 4;
        Ok(PauliString {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: phase as u8,
        })
    }

    /// Operator product `self * other`. Panics on a size mismatch.
    pub fn multiply(&self, other: &PauliString) -> PauliString {
        self.try_multiply(other).expect("Pauli size mismatch")
    }

    pub fn try_anticommutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.n() != other.n() {
            return Err(PauliError::DimensionMismatch(self.n(), other.n()));
        }
        Ok((self.x.and_count(&other.z) + self.z.and_count(&other.x)) % 2 == 1)
    }

    pub fn anticommutes(&self, other: &PauliString) -> bool {
        self.try_anticommutes(other).expect("Pauli size mismatch")
    }

    /// Keeps the factors on `qubits` together with the full phase. The
    /// discarded factors are read as `X^x Z^z`, so
    /// `restrict(S) (x) hat(rest) = self`.
    pub fn restrict(&self, qubits: &[usize]) -> Result<PauliString, PauliError> {
        let n = self.n();
        let mut mask = BitVec::zeros(n);
        for &q in qubits {
            if q >= n {
                return Err(PauliError::IndexOutOfRange { index: q, n });
            }
            mask.set(q, true);
        }
        Ok(PauliString { x: self.x.and(&mask), z: self.z.and(&mask), phase: self.phase })
    }

    /// Qubit `q` moves to `perm[q]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> PauliString {
        PauliString { x: self.x.permuted(perm), z: self.z.permuted(perm), phase: self.phase }
    }

    /// Parses `SIGN FACTOR*`, for example `-i X0 Z2 Y5` or `+1 I`.
    pub fn parse(text: &str, n: usize) -> Result<PauliString, PauliError> {
        let err = |msg: &str| PauliError::Parse { text: text.to_string(), msg: msg.to_string() };
        let mut tokens = text.split_whitespace();
        let sign = tokens.next().ok_or_else(|| err("empty string"))?;
        let k = parse_phase_symbol(sign).ok_or_else(|| err("bad sign token"))?;
        let mut u = UnsignedPauli::identity(n);
        let mut last: Option<usize> = None;
        let mut saw_identity = false;
        for tok in tokens {
            if tok == "I" {
                saw_identity = true;
                continue;
            }
            let mut chars = tok.chars();
            let l = chars
                .next()
                .and_then(Pauli::from_letter)
                .filter(|&l| l != Pauli::I)
                .ok_or_else(|| err("bad factor"))?;
            let q: usize = chars.as_str().parse().map_err(|_| err("bad qubit index"))?;
            if q >= n {
                return Err(err("qubit index out of range"));
            }
            if last.is_some_and(|p| p >= q) {
                return Err(err("qubit indices must increase"));
            }
            last = Some(q);
            u.set(q, l);
        }
        if saw_identity && last.is_some() {
            return Err(err("I mixed with other factors"));
        }
        Ok(u.to_hermitian().times_phase(k))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", phase_symbol(self.sign_phase()))?;
        write_factors(f, &self.x, &self.z)
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

/// Single-qubit Pauli eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eigenstate {
    ZPlus,
    ZMinus,
    XPlus,
    XMinus,
    YPlus,
    YMinus,
}

impl Eigenstate {
    pub const ALL: [Eigenstate; 6] = [
        Eigenstate::ZPlus,
        Eigenstate::ZMinus,
        Eigenstate::XPlus,
        Eigenstate::XMinus,
        Eigenstate::YPlus,
        Eigenstate::YMinus,
    ];

    pub fn new(axis: Pauli, positive: bool) -> Eigenstate {
        match (axis, positive) {
            (Pauli::Z, true) => Eigenstate::ZPlus,
            (Pauli::Z, false) => Eigenstate::ZMinus,
            (Pauli::X, true) => Eigenstate::XPlus,
            (Pauli::X, false) => Eigenstate::XMinus,
            (Pauli::Y, true) => Eigenstate::YPlus,
            (Pauli::Y, false) => Eigenstate::YMinus,
            (Pauli::I, _) => panic!("identity has no eigenstate label"),
        }
    }

    pub fn axis(self) -> Pauli {
        match self {
            Eigenstate::ZPlus | Eigenstate::ZMinus => Pauli::Z,
            Eigenstate::XPlus | Eigenstate::XMinus => Pauli::X,
            Eigenstate::YPlus | Eigenstate::YMinus => Pauli::Y,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Eigenstate::ZPlus | Eigenstate::XPlus | Eigenstate::YPlus)
    }

    pub fn flipped(self) -> Eigenstate {
        Eigenstate::new(self.axis(), !self.is_positive())
    }

    /// Vacuum-string character: `0 1 + - r l`.
    pub fn symbol(self) -> char {
        match self {
            Eigenstate::ZPlus => '0',
            Eigenstate::ZMinus => '1',
            Eigenstate::XPlus => '+',
            Eigenstate::XMinus => '-',
            Eigenstate::YPlus => 'r',
            Eigenstate::YMinus => 'l',
        }
    }

    pub fn from_symbol(c: char) -> Option<Eigenstate> {
        Eigenstate::ALL.into_iter().find(|e| e.symbol() == c)
    }

    /// `l |self> = i^k |out>` with the representatives
    /// |0>, |1>, (|0> +- |1>)/sqrt2, (|0> +- i|1>)/sqrt2.
    pub fn apply(self, l: Pauli) -> (Eigenstate, u8) {
        use Eigenstate::*;
        match (l, self) {
            (Pauli::I, s) => (s, 0),
            (Pauli::X, ZPlus) => (ZMinus, 0),
            (Pauli::X, ZMinus) => (ZPlus, 0),
            (Pauli::X, XPlus) => (XPlus, 0),
            (Pauli::X, XMinus) => (XMinus, 2),
            (Pauli::X, YPlus) => (YMinus, 1),
            (Pauli::X, YMinus) => (YPlus, 3),
            (Pauli::Z, ZPlus) => (ZPlus, 0),
            (Pauli::Z, ZMinus) => (ZMinus, 2),
            (Pauli::Z, XPlus) => (XMinus, 0),
            (Pauli::Z, XMinus) => (XPlus, 0),
            (Pauli::Z, YPlus) => (YMinus, 0),
            (Pauli::Z, YMinus) => (YPlus, 0),
            (Pauli::Y, ZPlus) => (ZMinus, 1),
            (Pauli::Y, ZMinus) => (ZPlus, 3),
            (Pauli::Y, XPlus) => (XMinus, 3),
            (Pauli::Y, XMinus) => (XPlus, 1),
            (Pauli::Y, YPlus) => (YPlus, 0),
            (Pauli::Y, YMinus) => (YMinus, 2),
        }
    }
}

impl fmt::Display for Eigenstate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Tensor product of single-qubit eigenstates times `i^phase`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductState {
    qubits: Vec<Eigenstate>,
    phase: u8,
}

impl ProductState {
    pub fn new(qubits: Vec<Eigenstate>, phase: u8) -> Self {
        ProductState { qubits, phase: phase % 4 }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Eigenstate::ZPlus; n], 0)
    }

    /// Computational basis state `|bits>` with phase 0.
    pub fn basis(bits: &BitVec) -> Self {
        let qubits = bits
            .iter()
            .map(|b| if b { Eigenstate::ZMinus } else { Eigenstate::ZPlus })
            .collect();
        Self::new(qubits, 0)
    }

    /// Parses a vacuum string such as `01+r`.
    pub fn from_symbols(s: &str) -> Option<Self> {
        let qubits = s.trim().chars().map(Eigenstate::from_symbol).collect::<Option<Vec<_>>>()?;
        Some(Self::new(qubits, 0))
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::new((0..n).map(|_| Eigenstate::ALL[rng.gen_range(0..6)]).collect(), 0)
    }

    pub fn n(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[Eigenstate] {
        &self.qubits
    }

    pub fn qubit(&self, q: usize) -> Eigenstate {
        self.qubits[q]
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self::new(self.qubits.clone(), phase)
    }

    pub fn symbols(&self) -> String {
        self.qubits.iter().map(|e| e.symbol()).collect()
    }

    /// The bit string if every qubit is `|0>` or `|1>`.
    pub fn computational_bits(&self) -> Option<BitVec> {
        let mut v = BitVec::zeros(self.n());
        for (q, e) in self.qubits.iter().enumerate() {
            match e {
                Eigenstate::ZPlus => {}
                Eigenstate::ZMinus => v.set(q, true),
                _ => return None,
            }
        }
        Some(v)
    }

    /// Same labels, phases ignored.
    pub fn same_ray(&self, other: &ProductState) -> bool {
        self.qubits == other.qubits
    }

    pub fn try_apply(&self, p: &PauliString) -> Result<ProductState, PauliError> {
        if p.n() != self.n() {
            return Err(PauliError::DimensionMismatch(p.n(), self.n()));
        }
        let mut phase = self.phase as usize + p.phase() as usize;
        let mut qubits = self.qubits.clone();
        for (q, e) in qubits.iter_mut().enumerate() {
            // Z^z acts before X^x.
            if p.z().get(q) {
                let (s, k) = e.apply(Pauli::Z);
                *e = s;
                phase += k as usize;
            }
            if p.x().get(q) {
                let (s, k) = e.apply(Pauli::X);
                *e = s;
                phase += k as usize;
            }
        }
        Ok(ProductState { qubits, phase: (phase % 4) as u8 })
    }

    pub fn apply(&self, p: &PauliString) -> ProductState {
        self.try_apply(p).expect("Pauli size mismatch")
    }

    /// Eigenvalue phase `i^k` if `p |self> = i^k |self>`.
    pub fn eigenphase(&self, p: &PauliString) -> Option<u8> {
        let out = self.apply(p);
        out.same_ray(self).then(|| (out.phase + 4 - self.phase) % 4)
    }
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |{}>", phase_symbol(self.phase), self.symbols())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(s, n).unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let r = p("+1 X0", 1).multiply(&p("+1 Z0", 1));
        assert_eq!(r, p("-i Y0", 1));
        assert_eq!(r.x().to_string(), "1");
        assert_eq!(r.z().to_string(), "1");
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = PauliString::identity(5);
        for _ in 0..50 {
            let q = PauliString::random(5, &mut rng);
            assert_eq!(id.multiply(&q), q);
        }
    }

    #[test]
    fn jw_product_example() {
        assert_eq!(p("+1 Z0 X1", 2).multiply(&p("+1 Z0 Y1", 2)), p("+i Z1", 2));
    }

    #[test]
    fn anticommutation_examples() {
        assert!(p("+1 X0", 2).anticommutes(&p("+1 Y0", 2)));
        assert!(!p("+1 X0", 2).anticommutes(&p("+1 X0 X1", 2)));
        assert!(p("+1 X0", 1).try_anticommutes(&p("+1 X0", 2)).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(p("+1 Z0 Z1 X2", 3).weight(), 3);
        assert_eq!(p("+1 Z0 Y1", 2).y_count(), 1);
        let y = PauliString::from_xz("1".parse().unwrap(), "1".parse().unwrap(), 1);
        assert!(y.is_hermitian());
        assert_eq!(y, p("+1 Y0", 1));
        assert!(!p("+i X0", 1).is_hermitian());
    }

    #[test]
    fn product_state_examples() {
        let s = ProductState::zeros(1);
        assert_eq!(s.apply(&p("+1 X0", 1)), ProductState::new(vec![Eigenstate::ZMinus], 0));
        let s2 = ProductState::zeros(2).apply(&p("+1 Z0 X1", 2));
        assert_eq!(s2.symbols(), "01");
        assert_eq!(s2.phase(), 0);
        let y0 = ProductState::zeros(1).apply(&p("+1 Y0", 1));
        assert_eq!((y0.symbols().as_str(), y0.phase()), ("1", 1));
        let y1 = ProductState::basis(&"1".parse().unwrap()).apply(&p("+1 Y0", 1));
        assert_eq!((y1.symbols().as_str(), y1.phase()), ("0", 3));
    }

    #[test]
    fn restrict_examples() {
        assert_eq!(p("+1 X0 Z1 X2", 3).restrict(&[0, 2]).unwrap(), p("+1 X0 X2", 3));
        let q = p("-i X0 Y1 Z2", 3);
        assert_eq!(q.restrict(&[0, 1, 2]).unwrap(), q);
        assert_eq!(p("+1 Z0 Y1 Z2", 3).restrict(&[1]).unwrap(), p("+1 Y1", 3));
        assert!(q.restrict(&[3]).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        for s in ["-i X0 Z2 Y5", "+1 I", "-1 Y0 Y1", "+i Z3"] {
            assert_eq!(p(s, 6).to_string(), s);
        }
        assert!(PauliString::parse("+1 X1 X0", 2).is_err());
        assert!(PauliString::parse("+2 X0", 2).is_err());
        assert!(PauliString::parse("+1 X5", 2).is_err());
        assert!(PauliString::parse("", 2).is_err());
    }

    #[test]
    fn third_letter() {
        assert_eq!(Pauli::third(Pauli::X, Pauli::Y), Pauli::Z);
        assert_eq!(Pauli::third(Pauli::Z, Pauli::Y), Pauli::X);
    }
}
