//! Generators, exhaustive surveys, sharpness search and auxiliary geometric
//! checks around the span bound for SP configurations.

mod generate;
mod geometry;
mod lemmas;
mod sharpness;
mod survey;

pub use generate::{generate, Generated, GeneratorSpec, SpEvidence};
pub use geometry::{
    evaluate_quadric, plane_configuration_cover, quadric_through_lines, PlaneCover, QuadricReport, QUADRIC_MONOMIALS,
};
pub use lemmas::{
    check_all_lemmas, check_containment, check_dichotomy, check_meet_bound, check_one_sided_projection,
    check_projection_iff, LemmaCheck,
};
pub use sharpness::{sharpness_search, SharpnessResult};
pub use survey::{survey_exhaustive, survey_with, BoundViolation, Survey, SurveyOptions, SurveyRecord, SurveyResult};
