//! Exact-arithmetic constructions of the weighted orbit graphs attached to
//! level-0 weights of untwisted affine Weyl groups.
//!
//! The crate builds, entirely over arbitrary-precision rationals:
//!
//! * affine Cartan data, root systems and Weyl groups ([`cartan`], [`weyl`]);
//! * the affine Weyl group acting on alcoves, with crossings, affine
//!   Grassmannian elements, strips and star/bullet translations ([`affine`]);
//! * sparse multivariate Laurent polynomials and linear algebra over their
//!   fraction field ([`laurent`]);
//! * the generic positively-multiplicative-graph machinery: path matrices,
//!   multiplicative bases, structure constants, expansions ([`pmgraph`]);
//! * the orbit-graph builders and their cross-checking verifiers ([`gamma`]);
//! * window-notation and tableau models used as independent oracles
//!   ([`particles`]).
//!
//! The crate is `no_std` (with `alloc`); all IO and serialization live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod affine;
pub mod cartan;
pub mod gamma;
pub mod laurent;
pub mod particles;
pub mod pmgraph;
pub mod weyl;

pub use affine::AffineElement;
pub use cartan::{AffineCartanData, GeoWeight, RootVector, TypeLabel};
pub use gamma::GammaGraph;
pub use laurent::{FFMatrix, LaurentPoly, RationalFunction};
pub use pmgraph::{PMCertificate, PMVerdict, WeightedDigraph};
pub use weyl::WeylElement;
