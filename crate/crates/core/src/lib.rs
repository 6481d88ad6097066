//! Exact construction and verification of A∞-bialgebras of type `(m,n)`:
//! a graded Hopf algebra `(H, Δ, μ)` over `Z2`, `Q` or an exterior ring
//! `E(x)`, together with one extra operation `ω: H^{⊗m} → H^{⊗n}` of degree
//! `m+n-3`.

pub mod calculus;
pub mod catalog;
pub mod describe;
pub mod element;
pub mod error;
mod eval;
pub mod hopf;
pub mod op;
pub mod relations;
pub mod report;
pub mod ring;
pub mod show;
pub mod space;

pub use element::{Degree, Element};
pub use error::{Error, Result};
pub use hopf::HopfStructure;
pub use op::{op_equal, MultiOp, OpKind, Sign};
pub use ring::{BaseRing, Ring, Scalar};
pub use space::{GeneratorTable, Space, Word};
