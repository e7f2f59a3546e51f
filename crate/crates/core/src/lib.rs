//! Ekedahl–Oort stratum combinatorics for unitary Shimura varieties of
//! signature (q−2, 2).

pub mod closure_order;
pub mod dieudonne;
pub mod product_maps;
pub mod siegel;
pub mod strata_index;
pub mod symmetric_group;
