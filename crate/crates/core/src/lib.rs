//! Exact algebra, finitely presented groups, permutation groups and cusp geometry for
//! complex hyperbolic lattices, with a catalog of lattices and certification pipeline.

pub mod cxhyp;
pub mod exactalg;
pub mod fpcore;
pub mod latcat;
pub mod permgrp;
pub mod pipeline;
