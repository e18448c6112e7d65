//! Affine encodings `|f> -> |G (f ^ b)>` of the Fock basis.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::{ufpr_table, BinMatrix, BitVec, Gf2Error};
use crate::mapping::{FermionQubitMapping, MappingError};
use crate::pauli::{PauliString, ProductState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EncodingError {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Invertible `G` with offset `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEncoding {
    g: BinMatrix,
    b: BitVec,
}

impl AffineEncoding {
    pub fn new(g: BinMatrix, b: BitVec) -> Result<Self, Gf2Error> {
        if b.len() != g.n() {
            return Err(Gf2Error::DimensionMismatch { expected: g.n(), got: b.len() });
        }
        if !g.is_invertible() {
            return Err(Gf2Error::Singular);
        }
        Ok(AffineEncoding { g, b })
    }

    pub fn linear(g: BinMatrix) -> Result<Self, Gf2Error> {
        let n = g.n();
        Self::new(g, BitVec::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn g(&self) -> &BinMatrix {
        &self.g
    }

    pub fn b(&self) -> &BitVec {
        &self.b
    }

    pub fn is_linear(&self) -> bool {
        self.b.is_zero()
    }

    /// `G (f ^ b)`.
    pub fn encode(&self, f: &BitVec) -> BitVec {
        self.g.mat_vec(&f.xor(&self.b)).expect("occupation vector length")
    }
}

/// Images of `X_0..X_{n-1}, Z_0..Z_{n-1}` under conjugation, as symplectic
/// columns `(x | z)`, with one sign bit per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabiliserTableau {
    n: usize,
    columns: Vec<BitVec>,
    signs: BitVec,
}

impl StabiliserTableau {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn column(&self, c: usize) -> &BitVec {
        &self.columns[c]
    }

    pub fn signs(&self) -> &BitVec {
        &self.signs
    }

    /// Signed Hermitian image of generator `c`.
    pub fn image(&self, c: usize) -> PauliString {
        let col = &self.columns[c];
        let u = crate::pauli::UnsignedPauli::from_xz(col.slice(0, self.n), col.slice(self.n, 2 * self.n));
        let h = u.to_hermitian();
        if self.signs.get(c) {
            h.neg()
        } else {
            h
        }
    }

    /// `C p C^dagger`, with `p = i^k prod X_j^{x_j} prod Z_j^{z_j}` rewritten
    /// factor by factor.
    pub fn conjugate(&self, p: &PauliString) -> PauliString {
        assert_eq!(p.n(), self.n, "tableau size mismatch");
        let mut acc = PauliString::identity(self.n).times_phase(p.phase());
        for j in p.x().ones_iter() {
            acc = acc.multiply(&self.image(j));
        }
        for j in p.z().ones_iter() {
            acc = acc.multiply(&self.image(self.n + j));
        }
        acc
    }

    /// Images of `X_i` and `Z_j` anticommute exactly when `i == j`, and
    /// every image is Hermitian.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        (0..2 * n).all(|a| {
            (0..2 * n).all(|b| {
                let expected = a % n == b % n && a != b;
                self.image(a).anticommutes(&self.image(b)) == expected
            })
        })
    }

    pub fn parse(text: &str) -> Result<Self, Gf2Error> {
        let rows: Vec<BitVec> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, l)| l.parse().map_err(|_| Gf2Error::Parse { line: i + 1, msg: "expected bits".into() }))
            .collect::<Result<_, _>>()?;
        let m = rows.len();
        if m % 2 != 0 || rows.iter().any(|r| r.len() != m + 1) {
            return Err(Gf2Error::Parse { line: 0, msg: "expected 2n rows of 2n+1 bits".into() });
        }
        let columns = (0..m).map(|c| BitVec::from_bools(&rows.iter().map(|r| r.get(c)).collect::<Vec<_>>())).collect();
        let signs = BitVec::from_bools(&rows.iter().map(|r| r.get(m)).collect::<Vec<_>>());
        Ok(StabiliserTableau { n: m / 2, columns, signs })
    }
}

impl fmt::Display for StabiliserTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..2 * self.n {
            for col in &self.columns {
                f.write_str(if col.get(r) { "1" } else { "0" })?;
            }
            writeln!(f, "{}", if self.signs.get(r) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `X_i -> X_{U(i)}`, `Z_i -> (-1)^{b_i} Z_{F(i)}`.
pub fn tableau_of_affine(enc: &AffineEncoding) -> StabiliserTableau {
    let n = enc.n();
    let inv = enc.g.invert().expect("encoding matrix is invertible");
    let zero = BitVec::zeros(n);
    let mut columns: Vec<BitVec> = (0..n).map(|i| enc.g.column(i).concat(&zero)).collect();
    columns.extend((0..n).map(|i| zero.concat(inv.row(i))));
    StabiliserTableau { n, columns, signs: BitVec::zeros(n).concat(&enc.b) }
}

/// `G_2i = (-1)^{sum_{k<i} b_k} X_{U(i)} Z_{P(i)}`,
/// `G_2i+1 = i (-1)^{sum_{k<=i} b_k} X_{U(i)} Z_{R(i)}`.
pub fn majoranas_of_affine(enc: &AffineEncoding) -> FermionQubitMapping {
    let sets = ufpr_table(&enc.g).expect("encoding matrix is invertible");
    let mut before = false;
    let pairs = sets
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let through = before ^ enc.b.get(i);
            let even = PauliString::from_xz(s.update.clone(), s.parity, if before { 2 } else { 0 });
            let odd = PauliString::from_xz(s.update, s.remainder, if through { 3 } else { 1 });
            before = through;
            (even, odd)
        })
        .collect();
    FermionQubitMapping::new(pairs).expect("affine Majoranas satisfy the CAR")
}

#[derive(Debug, Clone, PartialEq)]
pub enum NotClassicalReason {
    Unvalidated,
    EntangledVacuum(MappingError),
    /// The state is a product state but not a computational basis state.
    NotComputational(ProductState),
    /// Basis state with a phase other than `+1`.
    WrongPhase(ProductState),
    /// X-supports of the even operators do not form an invertible matrix.
    SingularReadout,
    WrongBasisState { expected: BitVec, got: ProductState },
}

impl std::fmt::Display for NotClassicalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotClassicalReason::Unvalidated => write!(f, "mapping not validated"),
            NotClassicalReason::EntangledVacuum(e) => write!(f, "{e}"),
            NotClassicalReason::NotComputational(s) => write!(f, "state {s} is not a computational basis state"),
            NotClassicalReason::WrongPhase(s) => write!(f, "state {s} has a phase other than +1"),
            NotClassicalReason::SingularReadout => write!(f, "even-operator X supports are not invertible"),
            NotClassicalReason::WrongBasisState { expected, got } => write!(f, "expected |{expected}>, got {got}"),
        }
    }
}

/// Occupation vector whose encoded state rules out an affine encoding.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("not a classical encoding at f={f}: {reason}")]
pub struct NotClassical {
    pub f: BitVec,
    pub reason: NotClassicalReason,
}

/// Reads `G` from the X/Y supports of the even operators and `b` from the
/// vacuum, then checks the vacuum, all single excitations and
/// `2n` sampled occupation vectors.
pub fn detect_classical(m: &FermionQubitMapping) -> Result<AffineEncoding, NotClassical> {
    detect_classical_with(m, 2 * m.n(), 0)
}

pub fn detect_classical_with(m: &FermionQubitMapping, extra: usize, seed: u64) -> Result<AffineEncoding, NotClassical> {
    let n = m.n();
    let zero = BitVec::zeros(n);
    let not = |f: &BitVec, reason| NotClassical { f: f.clone(), reason };
    if !m.is_validated() {
        return Err(not(&zero, NotClassicalReason::Unvalidated));
    }
    let vac = m.vacuum_state().map_err(|e| not(&zero, NotClassicalReason::EntangledVacuum(e)))?;
    let q = vac
        .computational_bits()
        .ok_or_else(|| not(&zero, NotClassicalReason::NotComputational(vac.clone())))?;
    let g = BinMatrix::from_columns((0..n).map(|j| m.pair(j).0.x().clone()).collect()).expect("square");
    let inv = g.invert().map_err(|_| not(&zero, NotClassicalReason::SingularReadout))?;
    let b = inv.mat_vec(&q).expect("length");
    let enc = AffineEncoding { g, b };

    let mut fs: Vec<BitVec> = (0..n).map(|j| BitVec::unit(n, j)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    fs.extend((0..extra).map(|_| BitVec::random(n, &mut rng)));
    for f in &fs {
        let s = m.fock_state_from(&vac, f).expect("length");
        let expected = enc.encode(f);
        match s.computational_bits() {
            None => return Err(not(f, NotClassicalReason::NotComputational(s))),
            Some(bits) if bits != expected => {
                return Err(not(f, NotClassicalReason::WrongBasisState { expected, got: s }))
            }
            Some(_) if s.phase() != 0 => return Err(not(f, NotClassicalReason::WrongPhase(s))),
            Some(_) => {}
        }
    }
    Ok(enc)
}

/// The linear mapping `majoranas_of_affine(G, 0)` and, per operator, whether
/// `m` carries the opposite sign.
pub fn affine_to_linear(m: &FermionQubitMapping, enc: &AffineEncoding) -> Result<(FermionQubitMapping, BitVec), EncodingError> {
    let detected = detect_classical(m).map_err(|e| EncodingError::Precondition(e.to_string()))?;
    if &detected != enc {
        return Err(EncodingError::Precondition("mapping does not realise this encoding".into()));
    }
    let lin = majoranas_of_affine(&AffineEncoding::linear(enc.g.clone())?);
    let mut flips = BitVec::zeros(2 * m.n());
    for (k, (a, b)) in m.majoranas().zip(lin.majoranas()).enumerate() {
        if a == &b.neg() {
            flips.set(k, true);
        } else if a != b {
            return Err(EncodingError::Precondition(format!("Gamma_{k} differs beyond a sign")));
        }
    }
    Ok((lin, flips))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::NamedMatrix;
    use crate::oracle::{apply_pauli, DenseStateOf};
    use crate::pauli::Pauli;
    use rand::Rng;

    fn enc(g: BinMatrix, b: &str) -> AffineEncoding {
        AffineEncoding::new(g, b.parse().unwrap()).unwrap()
    }

    #[test]
    fn identity_tableaux() {
        let t = tableau_of_affine(&enc(BinMatrix::identity(2), "00"));
        assert_eq!(t.to_string(), "10000\n01000\n00100\n00010\n");
        let t = tableau_of_affine(&enc(BinMatrix::identity(2), "10"));
        assert_eq!(t.to_string(), "10000\n01000\n00101\n00010\n");
        assert_eq!(StabiliserTableau::parse(&t.to_string()).unwrap(), t);
        assert!(t.is_symplectic());
    }

    /// Conjugation by `C|f> = |G(f^b)>` computed densely, one basis column at a time.
    fn dense_conjugate_matches(e: &AffineEncoding, p: &PauliString, image: &PauliString) -> bool {
        let n = e.n();
        let inv = e.g().invert().unwrap();
        (0..1u64 << n).all(|k| {
            let kv = BitVec::from_u64(n, k);
            // C^dagger |k> = |G^-1 k ^ b>.
            let pre = inv.mat_vec(&kv).unwrap().xor(e.b());
            let mid = apply_pauli(p, &DenseStateOf::<f64>::basis_bits(&pre)).unwrap();
            let (idx, amp) = mid.as_basis_vector().unwrap();
            let out = e.encode(&BitVec::from_u64(n, idx as u64));
            let lhs = DenseStateOf::<f64>::basis_bits(&out).scaled(amp);
            let rhs = apply_pauli(image, &DenseStateOf::<f64>::basis(n, k as usize)).unwrap();
            lhs.distance(&rhs) < 1e-12
        })
    }

    #[test]
    fn tableau_matches_dense_conjugation() {
        let e = enc(BinMatrix::named(NamedMatrix::Parity, 3).unwrap(), "000");
        let t = tableau_of_affine(&e);
        let sets = ufpr_table(e.g()).unwrap();
        for i in 0..3 {
            let x = PauliString::single(3, i, Pauli::X);
            let z = PauliString::single(3, i, Pauli::Z);
            assert_eq!(t.image(i), PauliString::from_xz(sets[i].update.clone(), BitVec::zeros(3), 0));
            assert_eq!(t.image(3 + i), PauliString::from_xz(BitVec::zeros(3), sets[i].flip.clone(), 0));
            assert!(dense_conjugate_matches(&e, &x, &t.image(i)));
            assert!(dense_conjugate_matches(&e, &z, &t.image(3 + i)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = rng.gen_range(1..5);
            let e = AffineEncoding::new(BinMatrix::random_invertible_with(n, &mut rng), BitVec::random(n, &mut rng)).unwrap();
            let t = tableau_of_affine(&e);
            assert!(t.is_symplectic());
            for _ in 0..5 {
                let p = PauliString::random(n, &mut rng);
                assert!(dense_conjugate_matches(&e, &p, &t.conjugate(&p)));
            }
        }
    }

    #[test]
    fn identity_encoding_is_jordan_wigner() {
        for n in 1..7 {
            let m = majoranas_of_affine(&AffineEncoding::linear(BinMatrix::identity(n)).unwrap());
            assert_eq!(m, FermionQubitMapping::jordan_wigner(n));
        }
    }

    #[test]
    fn example5_operators() {
        let m = majoranas_of_affine(&enc(BinMatrix::identity(2), "10"));
        assert_eq!(m.to_string(), "n=2\npair 0: +1 X0 ; -1 Y0\npair 1: -1 Z0 X1 ; -1 Z0 Y1\n");
        assert_eq!(detect_classical(&m).unwrap(), enc(BinMatrix::identity(2), "10"));
        let (lin, flips) = affine_to_linear(&m, &enc(BinMatrix::identity(2), "10")).unwrap();
        assert_eq!(lin, FermionQubitMapping::jordan_wigner(2));
        assert_eq!(flips.to_string(), "0111");
    }

    #[test]
    fn tableau_conjugation_gives_affine_majoranas() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..8);
            let e = AffineEncoding::new(BinMatrix::random_invertible_with(n, &mut rng), BitVec::random(n, &mut rng)).unwrap();
            let t = tableau_of_affine(&e);
            let jw = FermionQubitMapping::jordan_wigner(n);
            let m = majoranas_of_affine(&e);
            for (g, gm) in jw.majoranas().zip(m.majoranas()) {
                assert_eq!(&t.conjugate(g), gm);
            }
        }
    }

    #[test]
    fn detection_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let n = rng.gen_range(1..9);
            let e = AffineEncoding::new(BinMatrix::random_invertible_with(n, &mut rng), BitVec::random(n, &mut rng)).unwrap();
            let m = majoranas_of_affine(&e);
            assert_eq!(detect_classical(&m).unwrap(), e);
            let (lin, _) = affine_to_linear(&m, &e).unwrap();
            for (a, b) in lin.majoranas().zip(m.majoranas()) {
                assert_eq!(a.unsigned(), b.unsigned());
            }
            let (same, flips) = affine_to_linear(&lin, &AffineEncoding::linear(e.g().clone()).unwrap()).unwrap();
            assert_eq!(same, lin);
            assert!(flips.is_zero());
        }
    }

    #[test]
    fn jw_detection_and_product_breaking() {
        let e = detect_classical(&FermionQubitMapping::jordan_wigner(4)).unwrap();
        assert_eq!(e, AffineEncoding::linear(BinMatrix::identity(4)).unwrap());
        let ops = ["+1 X0", "-1 Z0 Y1", "+1 Z0 X1", "+1 Y0"].map(|s| PauliString::parse(s, 2).unwrap());
        let m6 = FermionQubitMapping::from_majoranas(ops.to_vec()).unwrap();
        let err = detect_classical(&m6).unwrap_err();
        assert!(matches!(err.reason, NotClassicalReason::EntangledVacuum(_)));
    }

    #[test]
    fn sign_flip_breaks_classicality() {
        // Negating G_0 of JW(2) leaves |1 0> with phase -1.
        let jw = FermionQubitMapping::jordan_wigner(2);
        let mut pairs = jw.pairs().to_vec();
        pairs[0].0 = pairs[0].0.neg();
        let m = FermionQubitMapping::new(pairs).unwrap();
        let err = detect_classical(&m).unwrap_err();
        assert!(matches!(err.reason, NotClassicalReason::WrongPhase(_)));
    }
}
