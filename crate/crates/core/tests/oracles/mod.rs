// SPDX-License-Identifier: Apache-2.0

//! Independent reference computations shared by the integration tests and
//! the acceptance suite.

#![allow(dead_code)]

pub mod hessian;
pub mod spheres;
pub mod stats;
