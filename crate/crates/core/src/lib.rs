//! Exact-arithmetic toolkit for Waring-type problems in discrete Heisenberg
//! groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`intpoly`]: univariate rational polynomials, the binomial basis of
//!   integer-valued polynomials and the gcd lemmas built on it.
//! - [`addsemigroup`]: Frobenius numbers, windowed sumsets and coverage of
//!   polynomial-value semigroups.
//! - [`heisenberg`]: the group `H_{2n+1}` over the rationals, its Lie algebra,
//!   `log`/`exp` and the class-2 BCH formula.
//! - [`mpoly`] and [`polyseq`]: polynomial sequences into the group, ordered
//!   products, palindromic symmetrization and power-sum decomposition.
//! - [`rankcheck`]: Jacobian-style coefficient matrices, degeneracy
//!   certificates and the affine-translate product search.
//! - [`kamke`]: simultaneous power-sum domains and the bounded solver.
//! - [`pipeline`]: the end-to-end witness generator.
//!
//! Every computation is exact; there is no floating point anywhere.

pub mod addsemigroup;
pub mod error;
pub mod heisenberg;
pub mod intpoly;
pub mod kamke;
pub mod linalg;
pub mod mpoly;
pub mod pipeline;
pub mod polyseq;
pub mod rankcheck;
pub mod rational;

pub use addsemigroup::{Coverage, GeneratorSet, SumsetWindow};
pub use error::{Error, Result};
pub use heisenberg::{CongruenceLattice, HeisLie, HeisPoint};
pub use intpoly::{BinomialBasisPoly, Degree, LagrangeNodeSet, Poly};
pub use kamke::{DomainReport, KamkeDomain, PowerSumTarget};
pub use mpoly::MultiPoly;
pub use pipeline::{HypothesisReport, PipelineConfig, PipelineReport, PipelineSample, SequenceSpec};
pub use polyseq::{GroupSequence, HeisMultiPoly, HeisPolySeq, Side, UniTriPolySeq};
pub use rankcheck::{DegeneracyCertificate, JacobianMatrix, TranslateProductSpec};
pub use rational::Q;
