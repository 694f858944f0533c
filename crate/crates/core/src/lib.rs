//! Homology of crossed modules through the nerve bicomplex.

pub mod abgrp;
pub mod bar;
pub mod grp;
pub mod laws;
pub mod par;
pub mod simp;
pub mod xmod;
