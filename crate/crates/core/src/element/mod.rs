//! Exact symbolic elements for the three engines: graph Leavitt path
//! algebras (with a trusted normal form), ultragraph Leavitt path algebras,
//! and Exel-Laca algebras.

mod el_elem;
mod graph_elem;
mod ultra_elem;

pub use el_elem::{ELElem, ELMiddle, ELMonomial};
pub use graph_elem::{GElem, GraphMonomial};
pub use ultra_elem::{identification_graph, UElem, UMonomial};

/// Three-valued equality verdict. `Unknown` is only produced outside the
/// regimes where the comparison is a decision procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq3 {
    True,
    False,
    Unknown,
}

impl Eq3 {
    pub fn is_true(self) -> bool {
        self == Eq3::True
    }
    pub fn is_false(self) -> bool {
        self == Eq3::False
    }
    pub fn and(self, other: Eq3) -> Eq3 {
        match (self, other) {
            (Eq3::False, _) | (_, Eq3::False) => Eq3::False,
            (Eq3::True, Eq3::True) => Eq3::True,
            _ => Eq3::Unknown,
        }
    }
}
