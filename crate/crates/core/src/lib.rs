//! Mod-2 cohomology rings of closed 3-manifolds, modelled as symmetric
//! trilinear forms over F₂ together with an orientation class.
//!
//! The crate checks the Postnikov–Wu identity, normalizes the attached
//! pairings, evaluates and synthesizes surgery plans, classifies small ranks
//! up to change of basis, and handles the torsion-free orientable theory via
//! alternating integral 3-forms. It is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalogue;
pub mod classify;
pub mod error;
pub mod f2;
pub mod form;
pub mod integral;
pub mod normal;
pub mod plan;
pub mod realize;

pub use classify::{canonical, census, enumerate_pw, Census, CensusClass, Invariants, WClass};
pub use error::{Error, Result};
pub use f2::{F2Matrix, F2Vector};
pub use form::{isomorphic, MsDescriptor, SymTrilinearForm};
pub use integral::{AltForm, BoPlan, BoTriple, GradedRing, StandardClass};
pub use normal::{normalize, NonorientableReport, NormalForm, OrientableReport};
pub use plan::{splice, KbBlock, LinkPlan, Violation};
pub use realize::{realize, roundtrip, Mismatch, Realization};
