//! Representation counts, Kneser-type covers, extraction and coset profiles.

mod cover;
mod extract;
mod profile;
mod reps;

pub use cover::{kneser_cover, stabilizer, type_i_cover, vosper_check, KneserCover, TypeICover};
pub use extract::{extract_sumfree, popular_difference_extraction, remove_one_per_triple, Extraction};
pub use profile::{
    check_alpha_inequalities, check_essentially_middled, kappa, middle_pair_partition, special_direction, AlphaReport,
    BetaProfile, ClauseResult, ClauseStatus, CosetProfile, ETA,
};
pub use reps::{popular_differences, popular_sums, r_table, verify_kp, verify_popular_sums_bound, KpCheck, PopTable, PopularSumsCheck};
