//! The counting objects built on `x^x = a (mod p)`.

mod counts;
mod order_class;
mod zd;

pub use counts::{
    crocker_distinct, crocker_floor, fixed_points, histogram, histogram_direct, lift_solution,
    n_count, n_count_ctx, n_count_signed, symmetric_count, symmetric_count_pairs, CountHistogram,
    LiftResult, HISTOGRAM_CAP, PAIR_ORACLE_CAP,
};
pub use order_class::{
    bound3_monitor, order_class_decompose, order_class_direct, order_class_direct_powmod, y_set,
    Bound3Report, GcdClassRecord, OrderClassReport,
};
pub use zd::{m_d_closed_form, m_d_count, m_d_direct, zd_identity_count, ZdReport, ZdTerm};
