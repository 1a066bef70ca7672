//! Perfect state transfer on NEPS products of the path P3.
//!
//! * [`gf2`]: basis rows as bit vectors, ranks, parity and the
//!   full-rank constant-weight basis constructor.
//! * [`graphs`]: adjacency matrices, dictionary-order indexing, components.
//! * [`spectral`]: transition matrices H(t) = exp(−itA) by several routes.
//! * [`methods`]: those routes behind one trait, looked up by name.
//! * [`pst`]: structural predictions and numeric PST/periodicity checkers.
//! * [`io`]: JSON/CSV matrix export.

pub mod gf2;
pub mod graphs;
pub mod io;
pub mod methods;
pub mod pst;
pub mod spectral;

pub use gf2::{Basis, BitVector, Gf2Error, ParityClass};
pub use graphs::{GraphError, RealMatrix, VertexLabel};
pub use methods::{MethodRegistry, TransitionMethod};
pub use pst::{PstError, PstReport};
pub use spectral::{ComplexMatrix, SpectralDecomposition, SpectralError, Time};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pst(#[from] PstError),
}
