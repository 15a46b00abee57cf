//! β, splitting tests, lower bounds, inversion and β-preserving transforms,
//! and the equivalence-class search.

mod bounds;
mod linearized;
mod search;
mod table;
mod transform;

pub use bounds::{
    lemma_mc_check, low_bound_check, min_n, theorem_beta_bound, trinomial_classification_check,
    TrinomialReport,
};
pub use linearized::{
    beta_of, companion_product, dense_root_count, meets_root_fraction, root_count_oracle,
    split_test_companion, split_test_div, Beta, LinearizedQsp, RootCount,
};
pub use search::{
    classify_family, record_order, search_representatives, CoeffSet, FamilyTag, SearchConfig,
    SearchRecord, SearchRecordOut, INVERSE_DISPLAY_CAP,
};
pub use table::{
    compare_table, parse_table, table_b1, RowCheck, TableRow, DEFAULT_SCOPE, TABLE_B1_CSV,
};
pub use transform::{
    canonical_gcd, canonical_representative, conjugate_gamma, invert_qsp, scale_alpha,
    substitute_xk, tail_degree,
};
