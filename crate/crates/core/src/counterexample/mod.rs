//! The left ideal `M = D[x,y]·(x−a)(x−b) + D[x,y]·(y−c)`: a total membership
//! decision procedure with re-verifiable witnesses, a finite properness
//! certificate, hypothesis checks on `(a, b, c)`, and the analysis of
//! `M ∩ D[x]`.

mod bipoly;
mod conditions;
mod contraction;
mod membership;
mod properness;
mod run;

use serde::{Deserialize, Serialize};

use crate::algebra::{DivisionRing, GaussianRational, Gf4, TwistedField};
use crate::error::Result;
use crate::laurent::SkewLaurentSeries;
use crate::poly::CentralPoly;

pub use bipoly::BiPoly;
pub use conditions::{
    check_conditions_ab, condition_c_enumerative, condition_c_structural, ConditionReport, IdentityCheck, RootPrefix,
    StructuralReport, StructuralVerdict,
};
pub use contraction::{contraction_analysis, ContractionReport};
pub use membership::{
    bipoly_divide_y, decide_membership, normal_form, Membership, NormalFormLinear, UnitKind, Witness,
};
pub use properness::{properness_certificate, PropernessCertificate};
pub use run::{
    run_counterexample, ConditionsSection, EnumerationSummary, Overall, RunOptions, TrialRecord, VerificationReport,
    ANNOTATIONS,
};

/// The data `(a, b, c)` defining `M`, with `q = (x − a)(x − b)` cached.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceParams<D: DivisionRing> {
    pub a: D,
    pub b: D,
    pub c: D,
    pub q: CentralPoly<D>,
}

impl<D: DivisionRing> InstanceParams<D> {
    pub fn new(a: D, b: D, c: D) -> Result<Self> {
        let q = CentralPoly::x_minus(&a).mul(&CentralPoly::x_minus(&b))?;
        Ok(InstanceParams { a, b, c, q })
    }

    /// `y − c` as an element of `D[x, y]`.
    pub fn y_gen(&self) -> BiPoly<D> {
        BiPoly::y_minus(&self.c)
    }

    /// `(x − a)(x − b)` as an element of `D[x, y]`.
    pub fn q_gen(&self) -> BiPoly<D> {
        BiPoly::from_x_poly(&self.q)
    }
}

/// Parameters as read from or written to an instance file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct InstanceFile<K: TwistedField> {
    pub field: String,
    pub a: SkewLaurentSeries<K>,
    pub b: SkewLaurentSeries<K>,
    pub c: SkewLaurentSeries<K>,
}

impl<K: TwistedField> InstanceFile<K> {
    pub fn into_params(self) -> Result<InstanceParams<SkewLaurentSeries<K>>> {
        InstanceParams::new(self.a, self.b, self.c)
    }
}

/// `D = GF(4)((t, Frobenius))`, `a = b = t` (since `−t = t`), `c = w` with `w³ = 1`.
pub fn gf4_instance() -> InstanceParams<SkewLaurentSeries<Gf4>> {
    let t = SkewLaurentSeries::t();
    InstanceParams::new(t.neg(), t, SkewLaurentSeries::constant(Gf4::W)).expect("exact arithmetic")
}

/// `D = ℚ(i)((t, conjugation))`, `a = −t`, `b = t`, `c = i`.
pub fn gaussian_instance() -> InstanceParams<SkewLaurentSeries<GaussianRational>> {
    let t = SkewLaurentSeries::t();
    InstanceParams::new(t.neg(), t, SkewLaurentSeries::constant(GaussianRational::i())).expect("exact arithmetic")
}
