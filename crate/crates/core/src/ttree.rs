//! Ternary trees and the mappings built from their root-to-leaf paths.
//!
//! Vertex labels double as qubit indices. Child slots are labelled by the
//! Pauli letters X, Y, Z; an empty slot is a leaf.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::gf2::BinMatrix;
use crate::mapping::{FermionQubitMapping, MappingError};
use crate::pauli::{Eigenstate, Pauli, PauliString, ProductState, UnsignedPauli};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("tree parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("vertex labels must be exactly 0..{n}")]
    NonContiguousLabels { n: usize },
    #[error("vertex {0} has more than one parent")]
    MultipleParents(usize),
    #[error("vertex {0} is not reachable from the root")]
    Disconnected(usize),
    #[error("invalid vacuum: {0}")]
    InvalidVacuum(String),
    #[error("mapping is not based on this tree: {0}")]
    NotTreeBased(String),
    #[error(transparent)]
    Mapping(#[from] MappingError),
}

/// Vertex numbering for complete trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labelling {
    BreadthFirst,
    /// X subtree, root, Y subtree, Z subtree, recursively.
    InOrder,
}

/// One step of a root-to-leaf path: the vertex and the edge taken out of it.
pub type Step = (usize, Pauli);

#[derive(Clone, PartialEq, Eq)]
pub struct TernaryTree {
    root: usize,
    children: Vec<[Option<usize>; 3]>,
    parent: Vec<Option<(usize, Pauli)>>,
}

fn slot(l: Pauli) -> usize {
    l.index().expect("child slots are X, Y, Z")
}

impl TernaryTree {
    pub fn from_children(root: usize, children: Vec<[Option<usize>; 3]>) -> Result<Self, TreeError> {
        let n = children.len();
        if root >= n {
            return Err(TreeError::NonContiguousLabels { n });
        }
        let mut parent = vec![None; n];
        for (v, ch) in children.iter().enumerate() {
            for (s, c) in ch.iter().enumerate() {
                if let Some(c) = *c {
                    if c >= n {
                        return Err(TreeError::NonContiguousLabels { n });
                    }
                    if parent[c].is_some() || c == root {
                        return Err(TreeError::MultipleParents(c));
                    }
                    parent[c] = Some((v, Pauli::NONTRIVIAL[s]));
                }
            }
        }
        let t = TernaryTree { root, children, parent };
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            seen[v] = true;
            stack.extend(t.children[v].iter().flatten());
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(TreeError::Disconnected(v));
        }
        Ok(t)
    }

    /// Vertex `i` has vertex `i+1` as its Z child.
    pub fn chain(n: usize) -> Self {
        let children = (0..n).map(|i| [None, None, (i + 1 < n).then_some(i + 1)]).collect();
        Self::from_children(0, children).expect("chain is a tree")
    }

    /// Full ternary tree of the given depth, labelled breadth first.
    pub fn complete(depth: usize) -> Self {
        Self::complete_with(depth, Labelling::BreadthFirst)
    }

    pub fn complete_with(depth: usize, labelling: Labelling) -> Self {
        let t = Self::complete_bfs(depth);
        match labelling {
            Labelling::BreadthFirst => t,
            Labelling::InOrder => {
                let mut perm = vec![0; t.n()];
                for (label, v) in t.in_order().into_iter().enumerate() {
                    perm[v] = label;
                }
                t.relabel(&perm)
            }
        }
    }

    fn complete_bfs(depth: usize) -> Self {
        assert!(depth >= 1, "depth starts at 1");
        let n = (3usize.pow(depth as u32) - 1) / 2;
        let inner = (3usize.pow(depth as u32 - 1) - 1) / 2;
        let children = (0..n)
            .map(|v| {
                if v < inner {
                    [Some(3 * v + 1), Some(3 * v + 2), Some(3 * v + 3)]
                } else {
                    [None; 3]
                }
            })
            .collect();
        Self::from_children(0, children).expect("complete tree is a tree")
    }

    /// Uniform choice of a free slot for each new vertex, then a random
    /// relabelling.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!(n >= 1, "a tree needs a vertex");
        let mut children = vec![[None; 3]; n];
        let mut free: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (0, 2)];
        for v in 1..n {
            let (u, s) = free.swap_remove(rng.gen_range(0..free.len()));
            children[u][s] = Some(v);
            free.extend([(v, 0), (v, 1), (v, 2)]);
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        Self::from_children(0, children).expect("random tree is a tree").relabel(&perm)
    }

    pub fn n(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn child(&self, v: usize, l: Pauli) -> Option<usize> {
        self.children[v][slot(l)]
    }

    pub fn parent(&self, v: usize) -> Option<(usize, Pauli)> {
        self.parent[v]
    }

    /// Steps from the root down to, but excluding, `v`.
    pub fn path_to(&self, v: usize) -> Vec<Step> {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some((p, l)) = self.parent[cur] {
            steps.push((p, l));
            cur = p;
        }
        steps.reverse();
        steps
    }

    /// X subtree, vertex, Y subtree, Z subtree.
    pub fn in_order(&self) -> Vec<usize> {
        fn walk(t: &TernaryTree, v: usize, out: &mut Vec<usize>) {
            if let Some(c) = t.child(v, Pauli::X) {
                walk(t, c, out);
            }
            out.push(v);
            for l in [Pauli::Y, Pauli::Z] {
                if let Some(c) = t.child(v, l) {
                    walk(t, c, out);
                }
            }
        }
        let mut out = Vec::with_capacity(self.n());
        walk(self, self.root, &mut out);
        out
    }

    /// Vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n(), "permutation size");
        let mut children = vec![[None; 3]; self.n()];
        for (v, ch) in self.children.iter().enumerate() {
            children[perm[v]] = ch.map(|c| c.map(|c| perm[c]));
        }
        Self::from_children(perm[self.root], children).expect("relabelling keeps a tree")
    }

    /// Vertices with every child before its parent.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for c in self.children[v].iter().flatten() {
                    stack.push((*c, false));
                }
            }
        }
        out
    }

    pub fn steps_pauli(&self, steps: &[Step]) -> UnsignedPauli {
        let mut u = UnsignedPauli::identity(self.n());
        for &(v, l) in steps {
            u.set(v, l);
        }
        u
    }

    /// Parses `(0 X=(1) Y=(2 Z=(3)) Z=(4))`.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let mut p = Parser { s: text.as_bytes(), pos: 0, nodes: Vec::new() };
        let root = p.node()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        let n = p.nodes.len();
        let mut children = vec![[None; 3]; n];
        let mut seen = vec![false; n];
        for (label, ch) in p.nodes {
            if label >= n || seen[label] {
                return Err(TreeError::NonContiguousLabels { n });
            }
            seen[label] = true;
            children[label] = ch;
        }
        Self::from_children(root, children)
    }

    fn write_node(&self, f: &mut fmt::Formatter<'_>, v: usize) -> fmt::Result {
        write!(f, "({v}")?;
        for l in Pauli::NONTRIVIAL {
            if let Some(c) = self.child(v, l) {
                write!(f, " {l}=")?;
                self.write_node(f, c)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(f, self.root)
    }
}

impl fmt::Debug for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TernaryTree{self}")
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nodes: Vec<(usize, [Option<usize>; 3])>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> TreeError {
        TreeError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), TreeError> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn node(&mut self) -> Result<usize, TreeError> {
        self.expect(b'(')?;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let label: usize = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("expected vertex label"))?;
        let mut ch = [None; 3];
        loop {
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                Some(&c) => {
                    let l = Pauli::from_letter(c as char)
                        .filter(|&l| l != Pauli::I)
                        .ok_or_else(|| self.err("expected X, Y, Z or ')'"))?;
                    self.pos += 1;
                    if ch[slot(l)].is_some() {
                        return Err(self.err("branch label repeated"));
                    }
                    self.expect(b'=')?;
                    ch[slot(l)] = Some(self.node()?);
                }
                None => return Err(self.err("unexpected end of input")),
            }
        }
        self.nodes.push((label, ch));
        Ok(label)
    }
}

/// Root-to-leaf paths in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnumeration {
    n: usize,
    paths: Vec<Vec<Step>>,
}

impl PathEnumeration {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn path(&self, i: usize) -> &[Step] {
        &self.paths[i]
    }

    pub fn pauli(&self, i: usize) -> UnsignedPauli {
        let mut u = UnsignedPauli::identity(self.n);
        for &(v, l) in &self.paths[i] {
            u.set(v, l);
        }
        u
    }

    pub fn paulis(&self) -> Vec<UnsignedPauli> {
        (0..self.len()).map(|i| self.pauli(i)).collect()
    }
}

fn collect_paths(t: &TernaryTree, v: usize, flip: bool, reversible: bool, prefix: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
    let order = if flip {
        [Pauli::Z, Pauli::Y, Pauli::X]
    } else {
        [Pauli::X, Pauli::Y, Pauli::Z]
    };
    for l in order {
        prefix.push((v, l));
        match t.child(v, l) {
            Some(c) => collect_paths(t, c, reversible && (flip ^ (l == Pauli::Y)), reversible, prefix, out),
            None => out.push(prefix.clone()),
        }
        prefix.pop();
    }
}

/// The `2n + 1` path strings, children visited X, Y, Z.
pub fn path_paulis(t: &TernaryTree) -> Vec<UnsignedPauli> {
    let mut out = Vec::new();
    collect_paths(t, t.root, false, false, &mut Vec::new(), &mut out);
    out.iter().map(|p| t.steps_pauli(p)).collect()
}

/// Paths ordered X, Y, Z, with the order reversed below every Y edge
/// (reversals compose).
pub fn enumerate_paths(t: &TernaryTree) -> PathEnumeration {
    let mut out = Vec::new();
    collect_paths(t, t.root, false, true, &mut Vec::new(), &mut out);
    PathEnumeration { n: t.n(), paths: out }
}

/// The tree's linear encoding: `G_2i = hat(2i)`, `G_2i+1 = i hat(2i+1)`,
/// where `hat(k)` is path `k` written as `X^x Z^z` with phase 0.
pub fn canonical_mapping(t: &TernaryTree) -> FermionQubitMapping {
    let e = enumerate_paths(t);
    let pairs = (0..t.n())
        .map(|i| (e.pauli(2 * i).to_hat(), e.pauli(2 * i + 1).to_hat().times_phase(1)))
        .collect();
    FermionQubitMapping::new(pairs).expect("tree paths satisfy the CAR")
}

/// `(G_T)_{ij} = 1` when the even operator of mode `j` in the canonical
/// mapping has X or Y on qubit `i`.
pub fn tree_matrix(t: &TernaryTree) -> BinMatrix {
    let m = canonical_mapping(t);
    BinMatrix::from_columns((0..t.n()).map(|j| m.pair(j).0.x().clone()).collect()).expect("square")
}

/// The ordered letters `(B, C)` around `e`'s axis with `-iBC |e> = |e>`.
fn vacuum_letters(e: Eigenstate) -> (Pauli, Pauli) {
    let (b, c) = match e.axis() {
        Pauli::Z => (Pauli::X, Pauli::Y),
        Pauli::X => (Pauli::Y, Pauli::Z),
        _ => (Pauli::Z, Pauli::X),
    };
    if e.is_positive() {
        (b, c)
    } else {
        (c, b)
    }
}

/// From `v` take edge `first`, then follow each vertex's stabilizing edge
/// down to a leaf. Returns the steps and the number of `-1` eigenstates met.
fn stabilizer_descent(t: &TernaryTree, vac: &ProductState, v: usize, first: Pauli, prefix: &[Step]) -> (Vec<Step>, usize) {
    let mut steps = prefix.to_vec();
    steps.push((v, first));
    let mut minus = 0;
    let mut cur = t.child(v, first);
    while let Some(w) = cur {
        let e = vac.qubit(w);
        if !e.is_positive() {
            minus += 1;
        }
        steps.push((w, e.axis()));
        cur = t.child(w, e.axis());
    }
    (steps, minus)
}

/// Pairs the path strings so that `vacuum` is the vacuum; mode `i` pairs at vertex `i`.
pub fn pair_for_vacuum(t: &TernaryTree, vacuum: &ProductState) -> Result<FermionQubitMapping, TreeError> {
    if vacuum.n() != t.n() {
        return Err(TreeError::InvalidVacuum(format!("{} qubits for a {}-vertex tree", vacuum.n(), t.n())));
    }
    if vacuum.phase() != 0 {
        return Err(TreeError::InvalidVacuum("phase must be +1".into()));
    }
    let pairs = (0..t.n())
        .map(|i| {
            let (b, c) = vacuum_letters(vacuum.qubit(i));
            let prefix = t.path_to(i);
            let (sb, mb) = stabilizer_descent(t, vacuum, i, b, &prefix);
            let (sc, mc) = stabilizer_descent(t, vacuum, i, c, &prefix);
            let (gb, gc) = (t.steps_pauli(&sb).to_hermitian(), t.steps_pauli(&sc).to_hermitian());
            if (mb + mc) % 2 == 1 {
                (gc, gb)
            } else {
                (gb, gc)
            }
        })
        .collect();
    Ok(FermionQubitMapping::new(pairs)?)
}

/// `pair_for_vacuum(t, |0..0>)` with `(b, c) -> (-c, b)` wherever `b` has an
/// odd number of Y factors.
pub fn braided_real_pairing(t: &TernaryTree) -> FermionQubitMapping {
    let m = pair_for_vacuum(t, &ProductState::zeros(t.n())).expect("zero vacuum is valid");
    let pairs = m
        .pairs()
        .iter()
        .map(|(b, c)| if b.y_count() % 2 == 1 { (c.neg(), b.clone()) } else { (b.clone(), c.clone()) })
        .collect();
    FermionQubitMapping::new(pairs).expect("braiding preserves the CAR")
}

/// Letter permutation at one vertex, as images of X, Y, Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relabel {
    pub vertex: usize,
    pub images: [Pauli; 3],
}

impl Relabel {
    pub fn apply(&self, l: Pauli) -> Pauli {
        match l.index() {
            Some(k) => self.images[k],
            None => Pauli::I,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images == Pauli::NONTRIVIAL
    }
}

/// Eigenvalue sign of `-iBC` on `e`, or `None` if `e` is not an eigenstate.
fn local_sign(b: Pauli, c: Pauli, e: Eigenstate) -> Option<bool> {
    let s = PauliString::single(1, 0, b).multiply(&PauliString::single(1, 0, c)).times_phase(3);
    ProductState::new(vec![e], 0).eigenphase(&s).map(|k| k == 0)
}

/// Permutes child labels vertex by vertex, children first, until the vacuum of
/// the relabelled mapping is `target`. Returns the new tree, mapping and the
/// relabellings applied.
pub fn revacuum(t: &TernaryTree, m: &FermionQubitMapping, target: &ProductState) -> Result<(TernaryTree, FermionQubitMapping, Vec<Relabel>), TreeError> {
    let n = t.n();
    if m.n() != n || target.n() != n {
        return Err(TreeError::InvalidVacuum("size mismatch".into()));
    }
    if target.phase() != 0 {
        return Err(TreeError::InvalidVacuum("phase must be +1".into()));
    }
    let allowed: HashSet<UnsignedPauli> = path_paulis(t).into_iter().collect();
    if let Some(k) = m.majoranas().position(|g| !allowed.contains(&g.unsigned())) {
        return Err(TreeError::NotTreeBased(format!("Gamma_{k} is not a path string")));
    }
    let mut tree = t.clone();
    let mut ops: Vec<PauliString> = m.majoranas().cloned().collect();
    let mut current = m.clone();
    let mut applied = Vec::new();
    for v in t.post_order() {
        let vac = current.vacuum_state()?;
        let (a, want) = (vac.qubit(v), target.qubit(v));
        if a == want {
            continue;
        }
        let k = (0..n)
            .find(|&k| {
                let (x, y) = (ops[2 * k].letter(v), ops[2 * k + 1].letter(v));
                x != Pauli::I && y != Pauli::I && x != y
            })
            .ok_or_else(|| TreeError::NotTreeBased(format!("no pair splits at vertex {v}")))?;
        let (b, c) = (ops[2 * k].letter(v), ops[2 * k + 1].letter(v));
        let sign = local_sign(b, c, a).ok_or_else(|| TreeError::NotTreeBased(format!("vertex {v} is not a product factor")))?;
        let (nb, nc) = vacuum_letters(want);
        let (nb, nc) = if local_sign(nb, nc, want) == Some(sign) { (nb, nc) } else { (nc, nb) };
        let mut images = Pauli::NONTRIVIAL;
        images[slot(b)] = nb;
        images[slot(c)] = nc;
        images[slot(Pauli::third(b, c))] = Pauli::third(nb, nc);
        let r = Relabel { vertex: v, images };
        for op in ops.iter_mut() {
            let l = op.letter(v);
            if l != Pauli::I {
                let mut u = op.unsigned();
                u.set(v, r.apply(l));
                *op = u.to_hermitian().times_phase(op.sign_phase());
            }
        }
        let mut ch = [None; 3];
        for l in Pauli::NONTRIVIAL {
            ch[slot(r.apply(l))] = tree.child(v, l);
        }
        let mut children = tree.children.clone();
        children[v] = ch;
        tree = TernaryTree::from_children(tree.root, children)?;
        current = FermionQubitMapping::from_majoranas(ops.clone())?;
        applied.push(r);
    }
    let vac = current.vacuum_state()?;
    if !vac.same_ray(target) {
        return Err(TreeError::InvalidVacuum(format!("reached |{}> instead of |{}>", vac.symbols(), target.symbols())));
    }
    Ok((tree, current, applied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strings(v: &[UnsignedPauli]) -> Vec<String> {
        v.iter().map(|u| u.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let s = "(0 X=(1) Y=(2 Z=(3)) Z=(4))";
        let t = TernaryTree::parse(s).unwrap();
        assert_eq!(t.to_string(), s);
        assert_eq!(t.n(), 5);
        assert_eq!(TernaryTree::parse(" ( 0 Z = (1) ) ").unwrap(), TernaryTree::chain(2));
        assert!(TernaryTree::parse("(0 X=(2))").is_err());
        assert!(TernaryTree::parse("(0 X=(0))").is_err());
        assert!(TernaryTree::parse("(0 X=(1) X=(2))").is_err());
        assert!(TernaryTree::parse("(0 W=(1))").is_err());
        assert!(TernaryTree::parse("(0").is_err());
    }

    #[test]
    fn chain_paths() {
        let t = TernaryTree::chain(2);
        assert_eq!(strings(&path_paulis(&t)), ["X0", "Y0", "Z0 X1", "Z0 Y1", "Z0 Z1"]);
        assert_eq!(strings(&path_paulis(&TernaryTree::chain(1))), ["X0", "Y0", "Z0"]);
    }

    #[test]
    fn chain_gives_jordan_wigner() {
        let t = TernaryTree::chain(2);
        assert_eq!(pair_for_vacuum(&t, &ProductState::zeros(2)).unwrap(), FermionQubitMapping::jordan_wigner(2));
        for n in 1..7 {
            assert_eq!(canonical_mapping(&TernaryTree::chain(n)), FermionQubitMapping::jordan_wigner(n));
            assert_eq!(tree_matrix(&TernaryTree::chain(n)), BinMatrix::identity(n));
        }
    }

    #[test]
    fn random_paths_anticommute() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..40 {
            let t = TernaryTree::random(rng.gen_range(1..9), &mut rng);
            let ps = path_paulis(&t);
            assert_eq!(ps.len(), 2 * t.n() + 1);
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    assert!(ps[i].anticommutes(&ps[j]));
                }
            }
            let e = enumerate_paths(&t);
            let last = e.pauli(2 * t.n());
            assert!(last.x().is_zero(), "last path is all Z");
        }
    }

    #[test]
    fn complete_trees() {
        assert_eq!(TernaryTree::complete(1).n(), 1);
        let t = TernaryTree::complete(2);
        assert_eq!(t.to_string(), "(0 X=(1) Y=(2) Z=(3))");
        assert_eq!(TernaryTree::complete(3).n(), 13);
        assert_eq!(TernaryTree::complete(4).n(), 40);
    }

    #[test]
    fn five_vertex_vacuum() {
        let t = TernaryTree::parse("(0 X=(1) Y=(2 Z=(3)) Z=(4))").unwrap();
        let v = ProductState::from_symbols("01r1+").unwrap();
        let m = pair_for_vacuum(&t, &v).unwrap();
        assert_eq!(m.vacuum_state().unwrap(), v);
        let dense = oracle::dense_vacuum(&m).unwrap();
        let expected = crate::DenseState::from_product(&v).phase_fixed();
        assert!(dense.distance(&expected) < 1e-9);
    }

    #[test]
    fn sierpinski_weights() {
        let w = canonical_mapping(&TernaryTree::complete(3)).weight_stats();
        assert_eq!(w.max, 3);
        assert_eq!(w.mean, 3.into());
    }

    #[test]
    fn revacuum_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = TernaryTree::random(6, &mut rng);
        let m = pair_for_vacuum(&t, &ProductState::random(6, &mut rng)).unwrap();
        let (t2, m2, r) = revacuum(&t, &m, &m.vacuum_state().unwrap()).unwrap();
        assert_eq!((t2, m2), (t, m));
        assert!(r.is_empty());
    }

    #[test]
    fn revacuum_swaps_x_and_y_on_qubit_one() {
        let t = TernaryTree::chain(2);
        let m = pair_for_vacuum(&t, &ProductState::from_symbols("01").unwrap()).unwrap();
        let (t2, m2, r) = revacuum(&t, &m, &ProductState::zeros(2)).unwrap();
        assert_eq!(r, vec![Relabel { vertex: 1, images: [Pauli::Y, Pauli::X, Pauli::Z] }]);
        assert_eq!(m2.vacuum_state().unwrap().symbols(), "00");
        assert_eq!(t2, t);
    }

    #[test]
    fn revacuum_reaches_random_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let n = rng.gen_range(1..8);
            let t = TernaryTree::random(n, &mut rng);
            let m = pair_for_vacuum(&t, &ProductState::random(n, &mut rng)).unwrap();
            let target = ProductState::random(n, &mut rng);
            let (t2, m2, _) = revacuum(&t, &m, &target).unwrap();
            assert_eq!(m2.vacuum_state().unwrap(), target);
            let allowed: HashSet<UnsignedPauli> = path_paulis(&t2).into_iter().collect();
            assert!(m2.majoranas().all(|g| allowed.contains(&g.unsigned())));
        }
    }

    #[test]
    fn revacuum_rejects_foreign_mapping() {
        let t = TernaryTree::chain(2);
        let bk = FermionQubitMapping::named(crate::mapping::NamedMapping::BravyiKitaev, 2).unwrap();
        assert!(matches!(revacuum(&t, &bk, &ProductState::zeros(2)), Err(TreeError::NotTreeBased(_))));
    }
}
