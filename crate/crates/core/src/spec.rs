//! A single handle over plain and subdivided circulants.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::circulant::{self, CirculantSpec, TwinClassification};
use crate::error::Result;
use crate::graph::Graph;
use crate::subdivided::{self, SubdividedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphSpec {
    Base(CirculantSpec),
    Subdivided(SubdividedSpec),
}

impl GraphSpec {
    pub fn base(&self) -> &CirculantSpec {
        match self {
            GraphSpec::Base(s) => s,
            GraphSpec::Subdivided(s) => s.base(),
        }
    }

    pub fn build(&self) -> Graph {
        match self {
            GraphSpec::Base(s) => circulant::build(s),
            GraphSpec::Subdivided(s) => subdivided::build_subdivided(s),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::Base(s) => s.n(),
            GraphSpec::Subdivided(s) => s.vertex_count(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.build().labels().to_vec()
    }

    pub fn twin_classification(&self) -> Result<TwinClassification> {
        match self {
            GraphSpec::Base(s) => circulant::twin_classification(s),
            GraphSpec::Subdivided(s) => Ok(subdivided::twin_classification_subdivided(s)),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.base().is_connected()
    }
}

impl From<CirculantSpec> for GraphSpec {
    fn from(s: CirculantSpec) -> Self {
        GraphSpec::Base(s)
    }
}

impl From<SubdividedSpec> for GraphSpec {
    fn from(s: SubdividedSpec) -> Self {
        GraphSpec::Subdivided(s)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Base(s) => s.fmt(f),
            GraphSpec::Subdivided(s) => s.fmt(f),
        }
    }
}
