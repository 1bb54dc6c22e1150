//! Subspace designs and their verifiers.

mod io;
mod set_system;
mod verify;

pub use io::{parse_design, parse_design_in, write_design, DESIGN_MAGIC};
pub use set_system::{
    parse_set_system, to_point_set_system, verify_steiner_system, write_set_system, SetSystem,
    SteinerSystemReport, SET_SYSTEM_MAGIC,
};
pub use verify::{
    verify_covering, verify_covering_with, verify_steiner, verify_turan, verify_turan_with,
    CoverageReport, Strategy, WITNESS_CAP,
};

use crate::error::{Error, Result};
use crate::subspace::Subspace;
use crate::vector::FqSpace;

/// A duplicate-free set of k-dimensional subspaces of F_q^n.
///
/// Whether it is read as a covering (blocks of dimension k) or a Turán
/// design (blocks of dimension r) is decided by the verifier that is run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceDesign {
    space: FqSpace,
    k: usize,
    blocks: Vec<Subspace>,
    label: Option<String>,
}

impl SubspaceDesign {
    /// Builds a design, rejecting duplicate blocks.
    pub fn new(
        space: FqSpace,
        k: usize,
        blocks: impl IntoIterator<Item = Subspace>,
    ) -> Result<SubspaceDesign> {
        let mut d = Self::collect(space, k, blocks)?;
        let before = d.blocks.len();
        d.blocks.dedup();
        if d.blocks.len() != before {
            return Err(Error::InvalidParameters(format!(
                "{} duplicate block(s)",
                before - d.blocks.len()
            )));
        }
        Ok(d)
    }

    /// Builds a design, silently merging duplicate blocks.
    pub fn new_dedup(
        space: FqSpace,
        k: usize,
        blocks: impl IntoIterator<Item = Subspace>,
    ) -> Result<SubspaceDesign> {
        let mut d = Self::collect(space, k, blocks)?;
        d.blocks.dedup();
        Ok(d)
    }

    fn collect(
        space: FqSpace,
        k: usize,
        blocks: impl IntoIterator<Item = Subspace>,
    ) -> Result<SubspaceDesign> {
        if k > space.n() {
            return Err(Error::InvalidParameters(format!(
                "block dimension {k} exceeds n = {}",
                space.n()
            )));
        }
        let mut out = Vec::new();
        for b in blocks {
            space.check_subspace(&b)?;
            if b.dim() != k {
                return Err(Error::Mismatch(format!(
                    "block of dimension {} in a design of {k}-subspaces",
                    b.dim()
                )));
            }
            out.push(b);
        }
        out.sort_unstable();
        Ok(SubspaceDesign {
            space,
            k,
            blocks: out,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn space(&self) -> &FqSpace {
        &self.space
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    /// Block dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks in enumeration order.
    pub fn blocks(&self) -> &[Subspace] {
        &self.blocks
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.blocks.binary_search(s).is_ok()
    }

    /// Orthogonal complement of every block.
    pub fn dualize(&self) -> SubspaceDesign {
        let blocks = self.blocks.iter().map(|b| {
            self.space
                .orthogonal_complement(b)
                .expect("blocks share the design's ambient space")
        });
        let mut d = SubspaceDesign::new(self.space.clone(), self.n() - self.k, blocks)
            .expect("complement is a bijection");
        d.label = self.label.clone();
        d
    }
}
