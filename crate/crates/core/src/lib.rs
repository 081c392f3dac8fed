//! Fourier and Chebyshev coefficient bounds for functions of bounded variation,
//! and design of proximity bands that guarantee a prescribed reduction of one
//! harmonic amplitude.
//!
//! The modules build on each other in order: [`func_model`] describes the
//! functions, [`spectral`] computes expansion coefficients, [`variation`]
//! measures total variation and extrema, [`bounds`] compares the two, and
//! [`band`] turns the bounds into a distortion-design workflow. [`cli`] wires
//! everything to the command line.

pub mod band;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod func_model;
pub mod spectral;
pub mod variation;

pub use band::{
    clamp_candidate, design_width, make_center, parse_band, variation_budget, verify_candidate,
    BandFile, BandSpec, BandWidths, CenterKind, DesignRequest, VerificationResult, WidthProvenance,
};
pub use bounds::{
    bound_report, bound_report_cheb, bound_report_trig, generic_bound, BoundReport, BoundRow,
    GenericBasisParams, Tolerance,
};
pub use error::{Error, Result};
pub use func_model::{parse_spec, sample_uniform, Deficit, FunctionSpec, Knot};
pub use spectral::{cheb_spectrum, spectrum, synthesize, trig_spectrum, Basis, SpectrumTable};
pub use variation::{
    check_variation_identity, variation_chebyshev, variation_periodic, VariationIdentity,
    VariationReport,
};
