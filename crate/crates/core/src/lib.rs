//! Numerics for n-fold symmetric products of planar domains.
//!
//! The n-fold symmetric product of a domain in the plane is realized as a
//! domain in C^n through the symmetrization map, whose components are the
//! elementary symmetric polynomials. This crate computes with that
//! realization at desk scale:
//!
//! * symmetric-polynomial algebra and the Newton transforms between
//!   elementary symmetric and power-sum coordinates ([`sympoly`]);
//! * the fiber of the symmetrization map as a root multiset with
//!   multiplicity clustering and stratification ([`roots`]);
//! * circular-boundary planar domains, their subharmonic defining function
//!   and boundary contours ([`domain`]);
//! * trapezoidal and graded-panel quadrature for closed-curve integrals,
//!   with a residue-calculus cross-check ([`contour`]);
//! * membership, the diagonal embedding, defining functions and the
//!   symmetrized-bidisc closed form ([`symprod`]);
//! * induced maps on symmetric products by direct and boundary-integral
//!   routes, the Cauchy-type operators behind them, the contour-integral
//!   local inverse of the symmetrization, and proper-map factor recovery
//!   ([`induced`]).
//!
//! Everything is pure and deterministic: no global state, fixed summation
//! orders, and all tolerances explicit.
//!
//! ```
//! use symprod_core::{elem_sym, roots_of, symprod_contains, DomainSpec, Membership};
//! use num_complex::Complex64;
//!
//! // symmetrize a pair of points of the unit disc ...
//! let z = [Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.4)];
//! let s = elem_sym(&z).unwrap();
//!
//! // ... recover the fiber and classify the point
//! let fiber = roots_of(&s).unwrap();
//! assert!(symprod_core::hausdorff_distance(fiber.roots(), &z) < 1e-10);
//!
//! let disc = DomainSpec::unit_disc();
//! let point = symprod_contains(&disc, &s, 0.0).unwrap();
//! assert_eq!(point.classification, Membership::Inside);
//! ```

pub mod contour;
pub mod domain;
pub mod error;
pub mod holomap;
pub mod induced;
pub mod roots;
pub mod sympoly;
pub mod symprod;

pub use contour::{
    gauss_legendre, integrate_adaptive, integrate_circle_graded, residue_reference, Contour,
    Curve, QuadResult,
};
pub use domain::{Circle, DomainSpec, Membership};
pub use error::{Error, Result};
pub use holomap::{HoloMap, HoloMapSpec, MAX_DERIV_ORDER};
pub use induced::{
    g_op, g_op_adaptive, gamma_inverse, j_op, j_op_adaptive, recover_factor, sigma_phi_direct,
    sigma_phi_integral, t_n_op, GammaDisc, InducedMapResult, RecoveredFactor, Route,
    DEFAULT_BOUNDARY_GUARD,
};
pub use roots::{
    hausdorff_distance, partition_type, roots_of, roots_of_with, PartitionType, RootCluster,
    RootMultiset, RootSolveOptions,
};
pub use sympoly::{
    elem_sym, eval_q, eval_q_and_dq, monic_coeffs, newton_p, newton_q, power_sums, tuple_scale,
    PowerSumPoint, QValue, SymPoint,
};
pub use symprod::{
    bidisc_contains, bidisc_value, diagonal_embed, f_defining, in_omega_nu, product_embed,
    product_embed_jacobian_det, sym_product_distance_bound, symprod_contains, SymProductPoint,
};

pub use num_complex::Complex64;
