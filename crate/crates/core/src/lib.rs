//! Exact skew Laurent series, polynomial rings in central variables over
//! division rings, and certified left-ideal computations in `D[x, y]`.

pub mod algebra;
pub mod counterexample;
pub mod error;
pub mod laurent;
pub mod nullstellensatz;
pub mod poly;
pub mod random;

pub use algebra::{
    AutomorphismKind, AutomorphismTag, DivisionRing, Field, GaussianRational, Gf4, RationalQuaternion, TwistedField,
};
pub use counterexample::{
    decide_membership, gaussian_instance, gf4_instance, run_counterexample, BiPoly, InstanceFile, InstanceParams,
    Membership, Overall, RunOptions, VerificationReport, Witness,
};
pub use error::{Error, Result};
pub use laurent::{CommutationReport, Precision, PrecisionPolicy, SkewLaurentSeries};
pub use nullstellensatz::{
    evaluation_ideal_certificate, quaternion_remark_check, remark_sweep, EvaluationCertificate, MultiPoly, Point,
    SweepReport,
};
pub use poly::{
    bezout_with_linear, is_right_factor, product_formula_check, BezoutOutcome, BezoutWitness, CentralPoly,
    FormulaBranch, FormulaReport,
};
