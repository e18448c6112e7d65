//! Relabelling symmetries of mappings: qubit swaps, local basis changes,
//! pair braids, sign changes and fermionic swaps.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use thiserror::Error;

use crate::mapping::{FermionQubitMapping, MappingError};
use crate::oracle;
use crate::pauli::{Pauli, PauliString, UnsignedPauli};

#[derive(Debug, Error)]
pub enum EquivError {
    #[error("mappings have {0} and {1} modes")]
    SizeMismatch(usize, usize),
    #[error("malformed symmetry op: {0}")]
    Malformed(String),
    #[error("expected a two-mode mapping, got n={0}")]
    WrongN(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no two-mode template has pair weight profile {0:?}")]
    Unclassified(Vec<(usize, usize)>),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

/// Single-qubit Clifford given by the signed images of `X`, `Y`, `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalClifford {
    images: [(Pauli, bool); 3],
}

impl LocalClifford {
    pub const IDENTITY: LocalClifford =
        LocalClifford { images: [(Pauli::X, false), (Pauli::Y, false), (Pauli::Z, false)] };

    /// From the images of `X` and `Z`; `Y = iXZ` fixes the third. The flag
    /// marks a minus sign.
    pub fn new(x: (Pauli, bool), z: (Pauli, bool)) -> Option<Self> {
        if x.0 == Pauli::I || z.0 == Pauli::I || x.0 == z.0 {
            return None;
        }
        let signed = |(l, neg): (Pauli, bool)| {
            let p = PauliString::single(1, 0, l);
            if neg {
                p.neg()
            } else {
                p
            }
        };
        let y = signed(x).multiply(&signed(z)).times_phase(1);
        Some(LocalClifford { images: [x, (y.letter(0), y.sign_phase() == 2), z] })
    }

    /// Sign-free where possible: cyclic relabellings carry no sign, a
    /// transposition puts its sign on `Y`.
    pub fn from_letters(x: Pauli, z: Pauli) -> Option<Self> {
        Self::new((x, false), (z, false))
    }

    /// The 24 elements.
    pub fn all() -> Vec<LocalClifford> {
        let mut out = Vec::with_capacity(24);
        for x in Pauli::NONTRIVIAL {
            for z in Pauli::NONTRIVIAL {
                for sx in [false, true] {
                    for sz in [false, true] {
                        if let Some(c) = Self::new((x, sx), (z, sz)) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn image(&self, l: Pauli) -> (Pauli, bool) {
        match l.index() {
            Some(k) => self.images[k],
            None => (Pauli::I, false),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Conjugates the factor on qubit `q`.
    pub fn apply_at(&self, p: &PauliString, q: usize) -> PauliString {
        let (l, neg) = self.image(p.letter(q));
        let mut u = p.unsigned();
        u.set(q, l);
        u.to_hermitian().times_phase(p.sign_phase() + if neg { 2 } else { 0 })
    }

    fn parse(tokens: &[&str]) -> Option<Self> {
        let signed = |t: &str| -> Option<(Pauli, bool)> {
            let mut c = t.chars();
            let neg = match c.next()? {
                '+' => false,
                '-' => true,
                _ => return None,
            };
            let l = Pauli::from_letter(c.next()?)?;
            c.next().is_none().then_some((l, neg))
        };
        let [x, y, z] = tokens else { return None };
        let c = Self::new(signed(x)?, signed(z)?)?;
        (c.images[1] == signed(y)?).then_some(c)
    }
}

impl fmt::Display for LocalClifford {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.images.iter().map(|&(l, neg)| format!("{}{l}", if neg { '-' } else { '+' })).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BraidDirection {
    /// `(a, b) -> (b, -a)`.
    Positive,
    /// `(a, b) -> (-b, a)`.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymmetryOp {
    /// Qubit `q` moves to `sigma[q]`.
    QubitSwap(Vec<usize>),
    LocalBasisChange { qubit: usize, clifford: LocalClifford },
    PairBraid { mode: usize, direction: BraidDirection },
    /// Negates operator `G_k`.
    SignChange(usize),
    /// New pair `i` is old pair `rho[i]`.
    FermionSwap(Vec<usize>),
}

fn check_perm(p: &[usize], n: usize) -> Result<(), EquivError> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(EquivError::Malformed(format!("permutation of length {} for n={n}", p.len())));
    }
    for &v in p {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(EquivError::Malformed(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

fn is_identity_perm(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &v)| i == v)
}

impl SymmetryOp {
    pub fn check(&self, n: usize) -> Result<(), EquivError> {
        let range = |k: usize, bound: usize, what: &str| {
            if k < bound {
                Ok(())
            } else {
                Err(EquivError::Malformed(format!("{what} {k} out of range for n={n}")))
            }
        };
        match self {
            SymmetryOp::QubitSwap(p) | SymmetryOp::FermionSwap(p) => check_perm(p, n),
            SymmetryOp::LocalBasisChange { qubit, .. } => range(*qubit, n, "qubit"),
            SymmetryOp::PairBraid { mode, .. } => range(*mode, n, "mode"),
            SymmetryOp::SignChange(k) => range(*k, 2 * n, "operator"),
        }
    }

    fn parse_line(line: &str) -> Result<SymmetryOp, String> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let nums = |ts: &[&str]| -> Result<Vec<usize>, String> {
            ts.iter().map(|t| t.parse().map_err(|_| format!("bad index {t:?}"))).collect()
        };
        let one = |ts: &[&str]| -> Result<usize, String> {
            match nums(ts)?.as_slice() {
                [k] => Ok(*k),
                _ => Err("expected one index".into()),
            }
        };
        match tokens.split_first() {
            Some((&"qubit-swap", rest)) => Ok(SymmetryOp::QubitSwap(nums(rest)?)),
            Some((&"fermion-swap", rest)) => Ok(SymmetryOp::FermionSwap(nums(rest)?)),
            Some((&"sign", rest)) => Ok(SymmetryOp::SignChange(one(rest)?)),
            Some((&"braid", [mode, dir])) => {
                let direction = match *dir {
                    "+" => BraidDirection::Positive,
                    "-" => BraidDirection::Negative,
                    _ => return Err(format!("bad braid direction {dir:?}")),
                };
                Ok(SymmetryOp::PairBraid { mode: one(&[mode])?, direction })
            }
            Some((&"local", [q, rest @ ..])) => {
                let clifford = LocalClifford::parse(rest).ok_or("bad local Clifford images")?;
                Ok(SymmetryOp::LocalBasisChange { qubit: one(&[q])?, clifford })
            }
            _ => Err(format!("unrecognised op {line:?}")),
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |p: &[usize]| p.iter().map(usize::to_string).join(" ");
        match self {
            SymmetryOp::QubitSwap(p) => write!(f, "qubit-swap {}", list(p)),
            SymmetryOp::LocalBasisChange { qubit, clifford } => write!(f, "local {qubit} {clifford}"),
            SymmetryOp::PairBraid { mode, direction } => {
                write!(f, "braid {mode} {}", if *direction == BraidDirection::Positive { '+' } else { '-' })
            }
            SymmetryOp::SignChange(k) => write!(f, "sign {k}"),
            SymmetryOp::FermionSwap(p) => write!(f, "fermion-swap {}", list(p)),
        }
    }
}

/// Applies one op. A validated input gives a validated output.
pub fn apply_symmetry(m: &FermionQubitMapping, op: &SymmetryOp) -> Result<FermionQubitMapping, EquivError> {
    let n = m.n();
    op.check(n)?;
    let mut pairs = m.pairs().to_vec();
    match op {
        SymmetryOp::QubitSwap(sigma) => {
            for (a, b) in &mut pairs {
                *a = a.permute_qubits(sigma);
                *b = b.permute_qubits(sigma);
            }
        }
        SymmetryOp::LocalBasisChange { qubit, clifford } => {
            for (a, b) in &mut pairs {
                *a = clifford.apply_at(a, *qubit);
                *b = clifford.apply_at(b, *qubit);
            }
        }
        SymmetryOp::PairBraid { mode, direction } => {
            let (a, b) = pairs[*mode].clone();
            pairs[*mode] = match direction {
                BraidDirection::Positive => (b, a.neg()),
                BraidDirection::Negative => (b.neg(), a),
            };
        }
        SymmetryOp::SignChange(k) => {
            let (a, b) = &mut pairs[k / 2];
            let p = if k % 2 == 0 { a } else { b };
            *p = p.neg();
        }
        SymmetryOp::FermionSwap(rho) => {
            pairs = rho.iter().map(|&r| m.pairs()[r].clone()).collect();
        }
    }
    if m.is_validated() {
        Ok(FermionQubitMapping::new(pairs)?)
    } else {
        Ok(FermionQubitMapping::unchecked(pairs))
    }
}

/// Line-per-op log of symmetry ops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness(pub Vec<SymmetryOp>);

impl Witness {
    pub fn ops(&self) -> &[SymmetryOp] {
        &self.0
    }

    pub fn replay(&self, m: &FermionQubitMapping) -> Result<FermionQubitMapping, EquivError> {
        self.0.iter().try_fold(m.clone(), |acc, op| apply_symmetry(&acc, op))
    }

    /// One op per line; blank lines and `#` comments are skipped, as is a
    /// leading `Equivalent` verdict line.
    pub fn parse(text: &str) -> Result<Witness, EquivError> {
        let mut ops = Vec::new();
        let mut first = true;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if std::mem::take(&mut first) && line == "Equivalent" {
                continue;
            }
            ops.push(SymmetryOp::parse_line(line).map_err(|msg| EquivError::Parse { line: i + 1, msg })?);
        }
        Ok(Witness(ops))
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            writeln!(f, "{op}")?;
        }
        Ok(())
    }
}

/// Invariant of the unsigned support structure: ops, their pairs, the
/// qubits, and per qubit the classes of ops sharing a letter. Colour
/// refinement runs on that graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub n: usize,
    /// Sorted `(min, max)` weights of each pair.
    pub pair_weights: Vec<(usize, usize)>,
    pub digest: u64,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} pairs={:?} digest={:016x}", self.n, self.pair_weights, self.digest)
    }
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

pub fn fingerprint(m: &FermionQubitMapping) -> Fingerprint {
    let n = m.n();
    let ops: Vec<UnsignedPauli> = m.majoranas().map(PauliString::unsigned).collect();
    // Nodes: ops 0..2n, pairs, qubits, then letter groups.
    let (op0, pair0, qubit0) = (0, 2 * n, 3 * n);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 4 * n];
    let mut colour: Vec<u64> = (0..4 * n).map(|v| if v < pair0 { 0 } else if v < qubit0 { 1 } else { 2 }).collect();
    let link = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for k in 0..2 * n {
        link(&mut adj, op0 + k, pair0 + k / 2);
    }
    for q in 0..n {
        for l in Pauli::NONTRIVIAL {
            let members: Vec<usize> = (0..2 * n).filter(|&k| ops[k].get(q) == l).collect();
            if members.is_empty() {
                continue;
            }
            let g = adj.len();
            adj.push(Vec::new());
            colour.push(3);
            link(&mut adj, g, qubit0 + q);
            for k in members {
                link(&mut adj, g, op0 + k);
            }
        }
    }
    let classes = |c: &[u64]| c.iter().copied().sorted().dedup().count();
    let mut count = classes(&colour);
    loop {
        let next: Vec<u64> = (0..adj.len())
            .map(|v| {
                let nb: Vec<u64> = adj[v].iter().map(|&u| colour[u]).sorted().collect();
                hash_of(&(colour[v], nb))
            })
            .collect();
        colour = next;
        let c = classes(&colour);
        if c == count {
            break;
        }
        count = c;
    }
    let mut pair_weights: Vec<(usize, usize)> = m
        .pairs()
        .iter()
        .map(|(a, b)| {
            let (wa, wb) = (a.weight(), b.weight());
            (wa.min(wb), wa.max(wb))
        })
        .collect();
    pair_weights.sort_unstable();
    let digest = hash_of(&colour.iter().copied().sorted().collect::<Vec<_>>());
    Fingerprint { n, pair_weights, digest }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest n searched exhaustively.
    pub max_n: usize,
    /// Cap on qubit-permutation times letter-relabelling candidates.
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_n: 4, max_candidates: 50_000_000 }
    }
}

impl Budget {
    pub fn with_max_n(max_n: usize) -> Self {
        Budget { max_n, ..Budget::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Witness),
    Inequivalent(String),
    Unknown(String),
}

impl Equivalence {
    pub fn label(&self) -> &'static str {
        match self {
            Equivalence::Equivalent(_) => "Equivalent",
            Equivalence::Inequivalent(_) => "Inequivalent",
            Equivalence::Unknown(_) => "Unknown",
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }
}

/// Six unsigned letter bijections on one qubit, as `(image of X, image of Z)`.
fn letter_bijections() -> Vec<LocalClifford> {
    Pauli::NONTRIVIAL
        .into_iter()
        .cartesian_product(Pauli::NONTRIVIAL)
        .filter_map(|(x, z)| LocalClifford::from_letters(x, z))
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Decides equivalence. Exhaustive over qubit permutations and per-qubit
/// letter bijections; pair order, braids and signs then follow per pair.
pub fn equivalent(m1: &FermionQubitMapping, m2: &FermionQubitMapping, budget: Budget) -> Result<Equivalence, EquivError> {
    let n = m1.n();
    if m2.n() != n {
        return Err(EquivError::SizeMismatch(n, m2.n()));
    }
    if m1.pairs() == m2.pairs() {
        return Ok(Equivalence::Equivalent(Witness::default()));
    }
    let (f1, f2) = (fingerprint(m1), fingerprint(m2));
    if f1.pair_weights != f2.pair_weights {
        return Ok(Equivalence::Inequivalent(format!(
            "pair weight profiles differ: {:?} vs {:?}",
            f1.pair_weights, f2.pair_weights
        )));
    }
    if f1 != f2 {
        return Ok(Equivalence::Inequivalent(format!(
            "support-structure fingerprints differ: {:016x} vs {:016x}",
            f1.digest, f2.digest
        )));
    }
    if n > budget.max_n {
        return Ok(Equivalence::Unknown(format!("n={n} exceeds the search bound {}", budget.max_n)));
    }
    let candidates = factorial(n).saturating_mul(6u64.saturating_pow(n as u32));
    if candidates > budget.max_candidates {
        return Ok(Equivalence::Unknown(format!("{candidates} candidates exceed the budget {}", budget.max_candidates)));
    }

    let mut target: HashMap<UnsignedPauli, (usize, usize)> = HashMap::new();
    for (j, (a, b)) in m2.pairs().iter().enumerate() {
        target.insert(a.unsigned(), (j, 0));
        target.insert(b.unsigned(), (j, 1));
    }
    let ops: Vec<UnsignedPauli> = m1.majoranas().map(PauliString::unsigned).collect();
    let bij = letter_bijections();

    for sigma in (0..n).permutations(n) {
        let moved: Vec<Vec<Pauli>> = ops
            .iter()
            .map(|u| {
                let mut letters = vec![Pauli::I; n];
                for q in 0..n {
                    letters[sigma[q]] = u.get(q);
                }
                letters
            })
            .collect();
        for choice in (0..n).map(|_| 0..bij.len()).multi_cartesian_product() {
            let image = |letters: &[Pauli]| {
                let mapped: Vec<Pauli> = letters.iter().enumerate().map(|(q, &l)| bij[choice[q]].image(l).0).collect();
                UnsignedPauli::from_letters(&mapped)
            };
            let mut rho = vec![usize::MAX; n];
            let ok = (0..n).all(|i| {
                let a = target.get(&image(&moved[2 * i]));
                let b = target.get(&image(&moved[2 * i + 1]));
                match (a, b) {
                    (Some(&(ja, sa)), Some(&(jb, sb))) if ja == jb && sa != sb => {
                        rho[ja] = i;
                        true
                    }
                    _ => false,
                }
            });
            if !ok {
                continue;
            }
            let mut witness = Vec::new();
            if !is_identity_perm(&sigma) {
                witness.push(SymmetryOp::QubitSwap(sigma.clone()));
            }
            for (q, &c) in choice.iter().enumerate() {
                if !bij[c].is_identity() {
                    witness.push(SymmetryOp::LocalBasisChange { qubit: q, clifford: bij[c] });
                }
            }
            if !is_identity_perm(&rho) {
                witness.push(SymmetryOp::FermionSwap(rho));
            }
            let mut cur = Witness(witness.clone()).replay(m1)?;
            for (k, ((a, _), (ta, _))) in cur.pairs().iter().zip(m2.pairs()).enumerate() {
                if a.unsigned() != ta.unsigned() {
                    witness.push(SymmetryOp::PairBraid { mode: k, direction: BraidDirection::Negative });
                }
            }
            cur = Witness(witness.clone()).replay(m1)?;
            for k in 0..2 * n {
                if cur.gamma(k) != m2.gamma(k) {
                    witness.push(SymmetryOp::SignChange(k));
                }
            }
            let w = Witness(witness);
            let out = w.replay(m1)?;
            assert_eq!(out.pairs(), m2.pairs(), "witness replay must reproduce the target");
            return Ok(Equivalence::Equivalent(w));
        }
    }
    Ok(Equivalence::Inequivalent(format!(
        "no qubit permutation and local relabelling matches the supports ({candidates} candidates searched)"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwoModeTemplate {
    JordanWigner,
    BravyiKitaev,
    ProductBreaking,
}

impl TwoModeTemplate {
    pub const ALL: [TwoModeTemplate; 3] =
        [TwoModeTemplate::JordanWigner, TwoModeTemplate::BravyiKitaev, TwoModeTemplate::ProductBreaking];

    pub fn reference(self) -> FermionQubitMapping {
        match self {
            TwoModeTemplate::JordanWigner => FermionQubitMapping::jordan_wigner(2),
            TwoModeTemplate::BravyiKitaev => {
                FermionQubitMapping::parse("n=2\npair 0: +1 X0 ; +1 Y0 Z1\npair 1: -1 Y0 Y1 ; +1 Y0 X1\n")
                    .expect("two-mode Bravyi-Kitaev is valid")
            }
            TwoModeTemplate::ProductBreaking => m6(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TwoModeTemplate::JordanWigner => "jordan-wigner",
            TwoModeTemplate::BravyiKitaev => "bravyi-kitaev",
            TwoModeTemplate::ProductBreaking => "product-breaking",
        }
    }
}

impl fmt::Display for TwoModeTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `((X0, -Z0 Y1), (Z0 X1, Y0))`, whose vacuum is entangled.
pub fn m6() -> FermionQubitMapping {
    FermionQubitMapping::parse("n=2\npair 0: +1 X0 ; -1 Z0 Y1\npair 1: +1 Z0 X1 ; +1 Y0\n").expect("m6 is valid")
}

/// Two-mode Jordan-Wigner after one labelling step each: a qubit swap, a
/// local basis change, a pair braid, a sign change, a fermionic swap.
pub fn jw_variants() -> [FermionQubitMapping; 5] {
    let jw = FermionQubitMapping::jordan_wigner(2);
    let ops = [
        SymmetryOp::QubitSwap(vec![1, 0]),
        SymmetryOp::LocalBasisChange { qubit: 0, clifford: LocalClifford::from_letters(Pauli::Y, Pauli::X).unwrap() },
        SymmetryOp::PairBraid { mode: 1, direction: BraidDirection::Negative },
        SymmetryOp::SignChange(1),
        SymmetryOp::FermionSwap(vec![1, 0]),
    ];
    ops.map(|op| apply_symmetry(&jw, &op).expect("well-formed op"))
}

/// Classifies by the sorted pair weight profile: Jordan-Wigner pairs have
/// weights (1,1),(2,2), Bravyi-Kitaev (1,2),(2,2), product-breaking
/// (1,2),(1,2).
pub fn classify_two_mode(m: &FermionQubitMapping) -> Result<TwoModeTemplate, EquivError> {
    if m.n() != 2 {
        return Err(EquivError::WrongN(m.n()));
    }
    if !m.is_validated() {
        return Err(EquivError::Mapping(MappingError::NotValidated));
    }
    let profile = fingerprint(m).pair_weights;
    match profile.as_slice() {
        [(1, 1), (2, 2)] => Ok(TwoModeTemplate::JordanWigner),
        [(1, 2), (2, 2)] => Ok(TwoModeTemplate::BravyiKitaev),
        [(1, 2), (1, 2)] => Ok(TwoModeTemplate::ProductBreaking),
        _ => Err(EquivError::Unclassified(profile)),
    }
}

#[derive(Debug, Clone, Default)]
pub struct CensusReport {
    pub total: usize,
    pub counts: BTreeMap<TwoModeTemplate, usize>,
    /// Members with a weight profile outside the three templates.
    pub unclassified: Vec<FermionQubitMapping>,
    /// Members that `equivalent` does not place with their class reference.
    pub disagreements: Vec<FermionQubitMapping>,
    /// Members whose vacuum is entangled exactly when the class is not
    /// product-breaking fails to hold.
    pub vacuum_violations: Vec<FermionQubitMapping>,
}

impl CensusReport {
    pub fn is_consistent(&self) -> bool {
        self.counts.len() == 3
            && self.unclassified.is_empty()
            && self.disagreements.is_empty()
            && self.vacuum_violations.is_empty()
    }
}

/// Every ordered 4-tuple of mutually anticommuting two-qubit Paulis, taken
/// as two pairs of Hermitian +1 operators.
pub fn two_mode_census() -> CensusReport {
    let paulis: Vec<UnsignedPauli> = Pauli::NONTRIVIAL
        .into_iter()
        .chain([Pauli::I])
        .cartesian_product(Pauli::NONTRIVIAL.into_iter().chain([Pauli::I]))
        .map(|(a, b)| UnsignedPauli::from_letters(&[a, b]))
        .filter(|u| u.weight() > 0)
        .collect();
    let refs: Vec<(TwoModeTemplate, FermionQubitMapping)> =
        TwoModeTemplate::ALL.iter().map(|&t| (t, t.reference())).collect();
    let mut report = CensusReport::default();
    for tuple in paulis.iter().permutations(4) {
        if !tuple.iter().tuple_combinations().all(|(a, b)| a.anticommutes(b)) {
            continue;
        }
        let h: Vec<PauliString> = tuple.iter().map(|u| u.to_hermitian()).collect();
        let m = FermionQubitMapping::new(vec![(h[0].clone(), h[1].clone()), (h[2].clone(), h[3].clone())])
            .expect("mutually anticommuting Hermitian Paulis form a mapping");
        report.total += 1;
        let Ok(t) = classify_two_mode(&m) else {
            report.unclassified.push(m);
            continue;
        };
        *report.counts.entry(t).or_default() += 1;
        let reference = &refs.iter().find(|(r, _)| *r == t).expect("reference exists").1;
        let agrees = equivalent(reference, &m, Budget::default()).map(|e| e.is_equivalent()).unwrap_or(false);
        if !agrees {
            report.disagreements.push(m.clone());
        }
        let entangled = oracle::dense_vacuum(&m).map(|v| !v.is_product()).unwrap_or(false);
        if entangled != (t == TwoModeTemplate::ProductBreaking) {
            report.vacuum_violations.push(m);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::NamedMapping;
    use crate::pauli::Pauli::{X, Y, Z};
    use crate::ttree::{canonical_mapping, TernaryTree};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn map(text: &str) -> FermionQubitMapping {
        FermionQubitMapping::parse(text).unwrap()
    }

    #[test]
    fn twenty_four_local_cliffords() {
        let all = LocalClifford::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().collect::<std::collections::HashSet<_>>().len(), 24);
        // Each preserves XY = iZ.
        for c in all {
            let img = |l| {
                let p = PauliString::single(1, 0, l);
                c.apply_at(&p, 0)
            };
            assert_eq!(img(X).multiply(&img(Y)), img(Z).times_phase(1), "{c}");
        }
    }

    #[test]
    fn letter_relabellings() {
        assert_eq!(LocalClifford::from_letters(Y, X).unwrap().to_string(), "+Y +Z +X");
        assert_eq!(LocalClifford::from_letters(Z, Y).unwrap().to_string(), "+Z +X +Y");
        // Transpositions put their one sign on the image of Y.
        assert_eq!(LocalClifford::from_letters(Y, Z).unwrap().to_string(), "+Y -X +Z");
        assert_eq!(LocalClifford::from_letters(X, Y).unwrap().to_string(), "+X -Z +Y");
        assert!(LocalClifford::from_letters(X, X).is_none());
        assert!(LocalClifford::IDENTITY.is_identity());
    }

    #[test]
    fn braid_then_sign_reorders_pair() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let b = apply_symmetry(&jw, &SymmetryOp::PairBraid { mode: 0, direction: BraidDirection::Negative }).unwrap();
        let s = apply_symmetry(&b, &SymmetryOp::SignChange(0)).unwrap();
        assert_eq!(s.pair(0), &(jw.gamma(1).clone(), jw.gamma(0).clone()));
        assert_eq!(s.pair(1), jw.pair(1));
    }

    #[test]
    fn identity_qubit_swap() {
        let jw = FermionQubitMapping::jordan_wigner(3);
        assert_eq!(apply_symmetry(&jw, &SymmetryOp::QubitSwap(vec![0, 1, 2])).unwrap(), jw);
    }

    #[test]
    fn cyclic_basis_change_on_jw() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let rot = LocalClifford::from_letters(Y, X).unwrap();
        let m = apply_symmetry(&jw, &SymmetryOp::LocalBasisChange { qubit: 0, clifford: rot }).unwrap();
        assert_eq!(m.to_string(), "n=2\npair 0: +1 Y0 ; +1 Z0\npair 1: +1 X0 X1 ; +1 X0 Y1\n");
        crate::oracle::check_car(&m, 1e-9).unwrap();
    }

    #[test]
    fn witness_text_round_trip() {
        let w = Witness(vec![
            SymmetryOp::QubitSwap(vec![1, 0, 2]),
            SymmetryOp::LocalBasisChange { qubit: 2, clifford: LocalClifford::from_letters(Z, X).unwrap() },
            SymmetryOp::PairBraid { mode: 1, direction: BraidDirection::Positive },
            SymmetryOp::SignChange(5),
            SymmetryOp::FermionSwap(vec![2, 0, 1]),
        ]);
        let text = w.to_string();
        assert_eq!(Witness::parse(&text).unwrap(), w);
        assert!(Witness::parse("local 0 +Y +Y +X").is_err());
        assert!(Witness::parse("braid 0 *").is_err());
    }

    #[test]
    fn malformed_ops_rejected() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        assert!(apply_symmetry(&jw, &SymmetryOp::QubitSwap(vec![0, 0])).is_err());
        assert!(apply_symmetry(&jw, &SymmetryOp::SignChange(4)).is_err());
        assert!(apply_symmetry(&jw, &SymmetryOp::FermionSwap(vec![1])).is_err());
    }

    #[test]
    fn jw_variants_are_equivalent() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        for m in jw_variants() {
            assert_ne!(m, jw);
            let e = equivalent(&jw, &m, Budget::default()).unwrap();
            let Equivalence::Equivalent(w) = e else { panic!("{m:?}: {e:?}") };
            assert_eq!(w.replay(&jw).unwrap().pairs(), m.pairs());
            assert_eq!(classify_two_mode(&m).unwrap(), TwoModeTemplate::JordanWigner);
        }
    }

    #[test]
    fn jw_and_bk_inequivalent() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let bk = FermionQubitMapping::named(NamedMapping::BravyiKitaev, 2).unwrap();
        assert_eq!(bk, TwoModeTemplate::BravyiKitaev.reference());
        assert!(matches!(equivalent(&jw, &bk, Budget::default()).unwrap(), Equivalence::Inequivalent(_)));
        assert_eq!(classify_two_mode(&jw).unwrap(), TwoModeTemplate::JordanWigner);
        assert_eq!(classify_two_mode(&bk).unwrap(), TwoModeTemplate::BravyiKitaev);
        assert_eq!(classify_two_mode(&m6()).unwrap(), TwoModeTemplate::ProductBreaking);
        assert!(matches!(classify_two_mode(&FermionQubitMapping::jordan_wigner(3)), Err(EquivError::WrongN(3))));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = FermionQubitMapping::jordan_wigner(2);
        let b = FermionQubitMapping::jordan_wigner(3);
        assert!(matches!(equivalent(&a, &b, Budget::default()), Err(EquivError::SizeMismatch(2, 3))));
    }

    #[test]
    fn beyond_bound_is_unknown() {
        let a = FermionQubitMapping::jordan_wigner(5);
        let b = apply_symmetry(&a, &SymmetryOp::QubitSwap(vec![1, 0, 2, 3, 4])).unwrap();
        assert!(matches!(equivalent(&a, &b, Budget::default()).unwrap(), Equivalence::Unknown(_)));
        assert!(equivalent(&a, &b, Budget::with_max_n(5)).unwrap().is_equivalent());
    }

    fn random_op<R: Rng>(n: usize, rng: &mut R) -> SymmetryOp {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        match rng.gen_range(0..5) {
            0 => SymmetryOp::QubitSwap(perm),
            1 => SymmetryOp::LocalBasisChange {
                qubit: rng.gen_range(0..n),
                clifford: *LocalClifford::all().choose(rng).unwrap(),
            },
            2 => SymmetryOp::PairBraid {
                mode: rng.gen_range(0..n),
                direction: if rng.gen() { BraidDirection::Positive } else { BraidDirection::Negative },
            },
            3 => SymmetryOp::SignChange(rng.gen_range(0..2 * n)),
            _ => SymmetryOp::FermionSwap(perm),
        }
    }

    #[test]
    fn random_relabellings_are_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(1..5);
            let m = canonical_mapping(&TernaryTree::random(n, &mut rng));
            let ops: Vec<SymmetryOp> = (0..rng.gen_range(1..8)).map(|_| random_op(n, &mut rng)).collect();
            let m2 = Witness(ops).replay(&m).unwrap();
            assert_eq!(fingerprint(&m), fingerprint(&m2));
            let e = equivalent(&m, &m2, Budget::default()).unwrap();
            let Equivalence::Equivalent(w) = e else { panic!("{m:?} vs {m2:?}: {e:?}") };
            assert_eq!(w.replay(&m).unwrap().pairs(), m2.pairs());
            let back = equivalent(&m2, &m, Budget::default()).unwrap();
            assert!(back.is_equivalent());
        }
    }

    #[test]
    fn product_breaking_is_distinct() {
        let jw = FermionQubitMapping::jordan_wigner(2);
        let bk = TwoModeTemplate::BravyiKitaev.reference();
        assert!(!equivalent(&jw, &m6(), Budget::default()).unwrap().is_equivalent());
        assert!(!equivalent(&bk, &m6(), Budget::default()).unwrap().is_equivalent());
        let m = map("n=2\npair 0: +1 Z1 ; +1 X0 Y1\npair 1: -1 X1 ; +1 Y0 Y1\n");
        assert_eq!(classify_two_mode(&m).unwrap(), TwoModeTemplate::ProductBreaking);
        assert!(equivalent(&m6(), &m, Budget::default()).unwrap().is_equivalent());
    }

    #[test]
    fn census_has_three_templates() {
        let r = two_mode_census();
        assert!(r.is_consistent(), "{r:?}");
        assert_eq!(r.counts.len(), 3);
        assert_eq!(r.counts.values().sum::<usize>(), r.total);
        // Counted from the set-builder forms. JW: qubit, ordered (A,B),
        // ordered (A',B'), pair order. BK: qubit, (A,B), A', two in-pair
        // orders, pair order. m6: qubit, (A,B,C), (A',B'), in-pair orders,
        // pair order, halved since swapping the roles of the two pairs
        // gives the same member.
        let jw = 2 * 6 * 6 * 2;
        let bk = 2 * 6 * 3 * 4 * 2;
        let pb = 2 * 6 * 6 * 4 * 2 / 2;
        assert_eq!(r.counts[&TwoModeTemplate::JordanWigner], jw);
        assert_eq!(r.counts[&TwoModeTemplate::BravyiKitaev], bk);
        assert_eq!(r.counts[&TwoModeTemplate::ProductBreaking], pb);
        assert_eq!(r.total, jw + bk + pb);
    }
}
