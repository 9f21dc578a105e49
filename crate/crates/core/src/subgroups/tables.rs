//! Block patterns for the spherical list, the exceptional finite clauses and
//! the maximal infinite cases.
//!
//! A pattern is a list of slots; a subgroup matches when its orthogonal blocks
//! can be dealt out to the slots, one block per slot (a `Many` slot takes any
//! number), leaving only optional slots empty. Degenerate factors need no
//! special handling: `A_0` is a `GL_1` block, `D_1` is a `GL_1` block, and
//! `B_0`/`C_0` are optional form slots.

use serde::Serialize;

use crate::rootsys::Family;

use super::spec::{Block, DnClass, ParabolicSpec, SubgroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// A `GL_k` block with `lo <= k <= hi`.
    Gl(usize, usize),
    /// A form block of the given family with `lo <= k <= hi`; empty allowed when `lo == 0`.
    Form(Family, usize, usize),
    /// Any number of form blocks of the given family.
    Many(Family),
    /// A `D_k` block (`k >= 2`) or a `GL_1` block, i.e. `D_k` with `k >= 1`.
    DIsh,
    /// Any number of blocks of any kind.
    Rest,
}

const ANY: usize = usize::MAX;

impl Slot {
    fn accepts(self, b: Block) -> bool {
        match (self, b) {
            (Slot::Gl(lo, hi), Block::Gl(k)) => lo <= k && k <= hi,
            (Slot::Form(f, lo, hi), Block::Form(g, k)) => f == g && lo <= k && k <= hi,
            (Slot::Many(f), Block::Form(g, _)) => f == g,
            (Slot::DIsh, Block::Gl(1)) | (Slot::DIsh, Block::Form(Family::D, _)) => true,
            (Slot::Rest, _) => true,
            _ => false,
        }
    }

    fn optional(self) -> bool {
        matches!(self, Slot::Many(_) | Slot::Rest | Slot::Form(_, 0, _))
    }

    fn multi(self) -> bool {
        matches!(self, Slot::Many(_) | Slot::Rest)
    }
}

/// True when the blocks can be dealt out to the slots.
pub fn fits(blocks: &[Block], slots: &[Slot]) -> bool {
    fn go(blocks: &[Block], slots: &[Slot], filled: &mut [bool]) -> bool {
        let Some((&b, rest)) = blocks.split_first() else {
            return slots.iter().zip(filled.iter()).all(|(s, &f)| f || s.optional());
        };
        for (i, s) in slots.iter().enumerate() {
            if (!filled[i] || s.multi()) && s.accepts(b) {
                let was = filled[i];
                filled[i] = true;
                if go(rest, slots, filled) {
                    return true;
                }
                filled[i] = was;
            }
        }
        false
    }
    go(blocks, slots, &mut vec![false; slots.len()])
}

/// Which maximal parabolics a clause covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nodes {
    Any,
    First,
    Last,
    FirstOrLast,
    /// `P_{n-1}` or `P_n` in type `D`.
    Fork,
    /// `P_i` with `2 <= i <= n-1`.
    Inner,
}

impl Nodes {
    pub fn admits(self, n: usize, node: usize) -> bool {
        match self {
            Nodes::Any => true,
            Nodes::First => node == 1,
            Nodes::Last => node == n,
            Nodes::FirstOrLast => node == 1 || node == n,
            Nodes::Fork => node + 1 >= n,
            Nodes::Inner => 2 <= node && node + 1 <= n,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub family: Family,
    pub label: &'static str,
    /// Alternative slot lists; the row matches when any of them fits.
    pub shapes: Vec<Vec<Slot>>,
    pub nodes: Nodes,
}

impl Row {
    pub fn fits(&self, x: &SubgroupSpec) -> bool {
        x.ambient.0 == self.family && self.shapes.iter().any(|s| fits(&x.blocks(), s))
    }
}

use Family::{A, B, C, D};
use Slot::{DIsh, Form, Gl, Many, Rest};

/// The maximal rank reductive spherical subgroups (besides `X = G`).
pub fn spherical_rows() -> Vec<Row> {
    let row = |family, label, shapes| Row {
        family,
        label,
        shapes,
        nodes: Nodes::Any,
    };
    vec![
        row(A, "A_nA_mT_1 <= A_{n+m+1}", vec![vec![Gl(1, ANY), Gl(1, ANY)]]),
        row(B, "B_nD_m <= B_{n+m}", vec![vec![Form(B, 0, ANY), DIsh]]),
        row(B, "A_{n-1}T_1 <= B_n", vec![vec![Form(B, 0, 0), Gl(1, ANY)]]),
        row(C, "C_nC_m <= C_{n+m}", vec![vec![Form(C, 0, ANY), Form(C, 0, ANY)]]),
        row(C, "C_{n-1}T_1 <= C_n", vec![vec![Form(C, 0, ANY), Gl(1, 1)]]),
        row(C, "A_{n-1}T_1 <= C_n", vec![vec![Gl(1, ANY)]]),
        row(D, "D_nD_m <= D_{n+m}", vec![vec![DIsh, DIsh]]),
        row(D, "A_{n-1}T_1 <= D_n", vec![vec![Gl(1, ANY)]]),
    ]
}

pub const D4_TRIALITY_LABEL: &str = "(iv)(a) D_4: (L_{2,3}, P_4), (L_{2,4}, P_3)";

/// The non-spherical finite cases, all with maximal `P`. The `D_4`
/// triality pair is handled separately by [`d4_exception`].
pub fn exception_rows() -> Vec<Row> {
    vec![
        Row {
            family: A,
            label: "(i)(a) A_n: P in {P_1, P_n}",
            shapes: vec![vec![Rest]],
            nodes: Nodes::FirstOrLast,
        },
        Row {
            family: A,
            label: "(i)(b) A_n: X = A_{n1}A_{n2}A_{n3}T_2",
            shapes: vec![vec![Gl(1, ANY), Gl(1, ANY), Gl(1, ANY)]],
            nodes: Nodes::Any,
        },
        Row {
            family: B,
            label: "(ii) B_n: X = A_{n1}B_{n2}T_1, P in {P_1, P_n}",
            shapes: vec![vec![Form(B, 0, ANY), Gl(1, ANY)]],
            nodes: Nodes::FirstOrLast,
        },
        Row {
            family: C,
            label: "(iii)(a) C_n: X in {C_{n1}..C_{nr}, A_{n1}C_{n2}..C_{nr}T_1}, P = P_1",
            shapes: vec![vec![Many(C)], vec![Many(C), Gl(1, ANY)]],
            nodes: Nodes::First,
        },
        Row {
            family: C,
            label: "(iii)(b) C_n: X in {C_{n1}C_{n2}C_{n3}, C_{n1}C_{n2}T_1, A_{n1}C_{n2}T_1}, P = P_n",
            shapes: vec![
                vec![Form(C, 0, ANY), Form(C, 0, ANY), Form(C, 0, ANY)],
                vec![Form(C, 0, ANY), Form(C, 0, ANY), Gl(1, 1)],
                vec![Form(C, 0, ANY), Gl(1, ANY)],
            ],
            nodes: Nodes::Last,
        },
        Row {
            family: D,
            label: "(iv)(b) D_n: X in {A_{n1}D_{n2}T_1, A_{n1}A_{n2}T_2}, P = P_1",
            shapes: vec![vec![Gl(1, ANY), DIsh], vec![Gl(1, ANY), Gl(1, ANY)]],
            nodes: Nodes::First,
        },
        Row {
            family: D,
            label: "(iv)(c) D_n: X in {D_{n1}D_{n2}D_{n3}, A_{n1}D_{n2}T_1}, P in {P_{n-1}, P_n}",
            shapes: vec![vec![DIsh, DIsh, DIsh], vec![Gl(1, ANY), DIsh]],
            nodes: Nodes::Fork,
        },
    ]
}

/// The `D_4` pairs `(L_{2,3}, P_4)` and `(L_{2,4}, P_3)`.
pub fn d4_exception(x: &SubgroupSpec, p: &ParabolicSpec) -> bool {
    x.ambient == (D, 4)
        && x.gl_sizes() == [2, 2]
        && matches!(
            (x.dn_class, p.node()),
            (Some(DnClass::Minus), Some(4)) | (Some(DnClass::Plus), Some(3))
        )
}

/// Maximal subgroups `X` for which `X\G/P` is infinite although the Levi
/// factor of `P` is spherical.
pub fn infinite_rows() -> Vec<Row> {
    vec![
        Row {
            family: A,
            label: "A_n: A_{n1}A_{n2}A_{n3}A_{n4}T_3, P_i (2 <= i <= n-1)",
            shapes: vec![vec![Gl(1, ANY); 4]],
            nodes: Nodes::Inner,
        },
        Row {
            family: B,
            label: "B_n: B_{n1}D_{n2}D_{n3}, P in {P_1, P_n}",
            shapes: vec![vec![Form(B, 0, ANY), DIsh, DIsh]],
            nodes: Nodes::FirstOrLast,
        },
        Row {
            family: B,
            label: "B_n: A_{n1}A_{n2}T_2, P in {P_1, P_n}",
            shapes: vec![vec![Form(B, 0, 0), Gl(1, ANY), Gl(1, ANY)]],
            nodes: Nodes::FirstOrLast,
        },
        Row {
            family: C,
            label: "C_n: A_{n1}A_{n2}C_{n3}T_2, P in {P_1, P_n}",
            shapes: vec![vec![Gl(1, ANY), Gl(1, ANY), Form(C, 0, ANY)]],
            nodes: Nodes::FirstOrLast,
        },
        Row {
            family: C,
            label: "C_n: C_{n1}C_{n2}C_{n3}C_{n4} (n_i >= 1), P_n",
            shapes: vec![vec![Form(C, 1, ANY); 4]],
            nodes: Nodes::Last,
        },
        Row {
            family: C,
            label: "C_n: A_{n1}C_{n2}C_{n3}T_1 (n_i >= 1), P_n",
            shapes: vec![vec![Gl(2, ANY), Form(C, 1, ANY), Form(C, 1, ANY)]],
            nodes: Nodes::Last,
        },
        Row {
            family: D,
            label: "D_n: D_{n1}D_{n2}D_{n3}, P_1",
            shapes: vec![vec![DIsh; 3]],
            nodes: Nodes::First,
        },
        Row {
            family: D,
            label: "D_n: D_{n1}D_{n2}D_{n3}D_{n4}, P in {P_{n-1}, P_n}",
            shapes: vec![vec![DIsh; 4]],
            nodes: Nodes::Fork,
        },
        Row {
            family: D,
            label: "D_n: A_{n1}D_{n2}D_{n3}T_1 (n1 >= 1), P in {P_{n-1}, P_n}",
            shapes: vec![vec![Gl(2, ANY), DIsh, DIsh]],
            nodes: Nodes::Fork,
        },
        Row {
            family: D,
            label: "D_n: A_{n1}A_{n2}T_2 (n_i >= 1), P in {P_{n-1}, P_n}, D_4 pairs excluded",
            shapes: vec![vec![Gl(2, ANY), Gl(2, ANY)]],
            nodes: Nodes::Fork,
        },
    ]
}
