//! DOT rendering of a mapping diagram: one node per qubit, each operator a
//! labelled string through the qubits it acts on, pairs joined by an arc.

use std::fmt::Write;

use fermap::{FermionQubitMapping, PauliString};

fn sign_label(p: &PauliString) -> &'static str {
    match p.sign_phase() {
        0 => "+",
        2 => "-",
        1 => "+i",
        _ => "-i",
    }
}

pub fn to_dot(m: &FermionQubitMapping) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "graph mapping {{").unwrap();
    writeln!(w, "  graph [rankdir=LR];").unwrap();
    writeln!(w, "  node [shape=circle];").unwrap();
    for q in 0..m.n() {
        writeln!(w, "  q{q} [label=\"{q}\"];").unwrap();
    }
    for (k, g) in m.majoranas().enumerate() {
        let support: Vec<usize> = (0..m.n()).filter(|&q| g.letter(q) != fermap::Pauli::I).collect();
        writeln!(w, "  g{k} [shape=box, label=\"{}G{k}\"];", sign_label(g)).unwrap();
        let mut prev = format!("g{k}");
        for q in support {
            writeln!(w, "  {prev} -- q{q} [label=\"{}\", taillabel=\"{k}\"];", g.letter(q)).unwrap();
            prev = format!("q{q}");
        }
    }
    for i in 0..m.n() {
        writeln!(w, "  g{} -- g{} [style=dashed, label=\"mode {i}\"];", 2 * i, 2 * i + 1).unwrap();
    }
    writeln!(w, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jw_two_modes() {
        let dot = to_dot(&FermionQubitMapping::jordan_wigner(2));
        assert!(dot.starts_with("graph mapping {\n"));
        assert!(dot.contains("g2 -- q0 [label=\"Z\", taillabel=\"2\"];"));
        assert!(dot.contains("q0 -- q1 [label=\"X\", taillabel=\"2\"];"));
        assert!(dot.contains("g2 -- g3 [style=dashed, label=\"mode 1\"];"));
        assert!(dot.ends_with("}\n"));
    }
}
