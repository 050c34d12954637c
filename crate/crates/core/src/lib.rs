//! Cascades of strongly orthogonal roots, the coadjoint action of a maximal unipotent group on
//! `n_-`, the invariant ring `S(n)^N`, and the Lipsman–Wolf matrix coefficient,
//! all in exact rational arithmetic.

pub mod cartan;
pub mod cascade;
pub mod chevalley;
pub mod coadjoint;
pub mod error;
pub mod invariants;
pub mod irrep;
pub mod linalg;
pub mod lipswolf;
pub mod poly;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod verify;

pub use cartan::{CartanType, Family, SimpleType};
pub use cascade::{compute_cascade, Cascade};
pub use chevalley::ChevalleyBasis;
pub use coadjoint::{NilVector, Side, TorusElement, TorusPoint};
pub use error::{Error, Result};
pub use invariants::{GeneratorSet, InvariantBasis, Spectrum};
pub use irrep::IrrepModule;
pub use lipswolf::LipsmanWolfReport;
pub use poly::NilPolynomial;
pub use rational::Q;
pub use report::{Status, VerificationReport};
pub use rootsys::{Root, RootSystem, Weight};
pub use verify::{CheckId, RunConfig, RunReport};
