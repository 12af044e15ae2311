pub mod exact;
pub mod number_field;
pub mod padic;
pub mod algebraic_group;
pub mod congruence;
pub mod density;
pub mod cli;
