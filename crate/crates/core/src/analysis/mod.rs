//! Design calculations for scales: legibility, alignment of homogeneous
//! scales, right-triangle coverage and the C/R coincidence.

pub mod accuracy;
pub mod alignment;
pub mod coincidence;
pub mod rational;
pub mod triangle;

pub use accuracy::{
    check_accuracy, required_unit, resolvable_bound, AccuracyMethod, AccuracyParams, AccuracyReport,
};
pub use alignment::{aligned_value, alignment, alignment_with, AlignmentParams, AlignmentReport};
pub use coincidence::{coincidence_from_c, coincidence_from_r, CoincidencePair};
pub use rational::{easy_rational, RationalWitness};
pub use triangle::{triangle_range, triangle_range_in, AngleUnit, TriangleReport};
