//! Strip sweep: a logical operator of extent at most `r` along an axis.
//!
//! The lattice is cut into an even number of strips of width `r-1` or `r`.
//! A generator of extent `r` meets at most one even strip and at most one
//! odd strip. A logical operator is cleaned off the even strips; what is
//! left splits into pieces on the odd strips, each commuting with every
//! generator, and at least one piece is still nontrivial.

use serde::Serialize;

use crate::budget::Budget;
use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::group::CodeGroups;
use crate::lattice::Region;
use crate::metrics::lindist::{light_target_in_mask, target_in_mask, SlabSpec};
use crate::metrics::target::{Mode, Target};
use crate::pauli::PauliOp;
use crate::transforms::clean::{clean_stabilizer, clean_subsystem, CleanResult};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SweepSource {
    /// Restriction of the cleaned operator to an odd strip.
    OddStrip,
    /// Cleaning an even strip was impossible; the logical trapped there.
    Trapped,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub axis: usize,
    pub r: usize,
    pub strips: Vec<SlabSpec>,
    /// Index into `strips` of the strip holding the witness, if it lies in
    /// a single strip.
    pub strip: Option<usize>,
    pub source: SweepSource,
    pub witness: PauliOp,
    /// Extent of `witness` along `axis`.
    pub d1: usize,
    /// A minimum-weight target within the same support region.
    pub compact: PauliOp,
}

impl SweepResult {
    pub fn within_r(&self) -> bool {
        self.d1 <= self.r
    }
}

/// Runs the sweep along `axis` with `r` the declared interaction range.
pub fn strip_sweep(code: &CodeSpec, groups: &CodeGroups, axis: usize, budget: &Budget) -> Result<SweepResult> {
    let layout = code.layout();
    let lat = layout.lattice();
    let r = code.declared_r();
    let strips = lat.strip_partition(r, axis)?;
    if groups.k() == 0 {
        return Err(Error::NoLogicals);
    }
    let mode = Mode::default_for(code.role());
    let target = Target::new(groups, &mode)?;
    let specs: Vec<SlabSpec> = strips.iter().map(|s| SlabSpec { start: s.start, width: s.width }).collect();
    let masks = strips.iter().map(|s| layout.qubit_mask(&s.region)).collect::<Result<Vec<BitVec>>>()?;
    let order_axis = if lat.dim() > 1 { (axis + 1) % lat.dim() } else { axis };
    let finish = |witness: PauliOp, strip: Option<usize>, mask: &BitVec, source: SweepSource| -> Result<SweepResult> {
        if !target.is_target(&witness) {
            return Err(Error::Internal("sweep produced a trivial operator".into()));
        }
        let compact =
            light_target_in_mask(layout, &target, mask, order_axis, budget).unwrap_or_else(|| witness.clone());
        let d1 = layout.bounding_extent(&witness, axis)?;
        Ok(SweepResult { axis, r, strips: specs.clone(), strip, source, witness, d1, compact })
    };

    let mut p = groups.logicals.used[0].0.clone();
    let even: Vec<usize> = (0..strips.len()).step_by(2).collect();
    match code.role() {
        Role::Stabilizer => {
            for &i in &even {
                match clean_stabilizer(code, groups, &p, &strips[i].region)? {
                    CleanResult::Cleaned { cleaned, .. } => p = cleaned,
                    CleanResult::Trapped { logical } => {
                        return finish(logical, Some(i), &masks[i], SweepSource::Trapped);
                    }
                }
            }
        }
        Role::Gauge => {
            let mut union = lat.empty_region();
            for &i in &even {
                union = union.union(&strips[i].region)?;
            }
            match clean_subsystem(code, groups, &p, &union)? {
                CleanResult::Cleaned { cleaned, .. } => p = cleaned,
                CleanResult::Trapped { logical } => {
                    for &i in &even {
                        if let Some(w) = target_in_mask(&target, &masks[i]) {
                            return finish(w, Some(i), &masks[i], SweepSource::Trapped);
                        }
                    }
                    let mask = layout.qubit_mask(&union)?;
                    return finish(logical, None, &mask, SweepSource::Trapped);
                }
            }
        }
    }
    for i in (1..strips.len()).step_by(2) {
        let piece = p.restrict(&masks[i])?;
        if target.is_target(&piece) {
            return finish(piece, Some(i), &masks[i], SweepSource::OddStrip);
        }
    }
    Err(Error::Internal("no odd-strip piece of the cleaned logical is nontrivial".into()))
}

/// Region of a sweep strip.
pub fn strip_region(code: &CodeSpec, result: &SweepResult, strip: usize) -> Result<Region> {
    let s = result.strips[strip];
    code.lattice().slab(result.axis, s.start, s.width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;
    use crate::zoo;

    fn sweep(code: &CodeSpec, axis: usize) -> SweepResult {
        let groups = CodeGroups::new(code).unwrap();
        let r = strip_sweep(code, &groups, axis, &Budget::default()).unwrap();
        let t = Target::new(&groups, &Mode::default_for(code.role())).unwrap();
        assert!(t.is_target(&r.witness));
        assert!(t.is_target(&r.compact));
        assert!(r.compact.weight() <= r.witness.weight());
        r
    }

    #[test]
    fn toric_and_bacon_shor() {
        for axis in 0..2 {
            let r = sweep(&zoo::toric_2d(4).unwrap(), axis);
            assert!(r.d1 <= 2);
            assert_eq!(r.compact.weight(), 4);
            let r = sweep(&zoo::bacon_shor_2d(4).unwrap(), axis);
            assert!(r.d1 <= 2);
        }
    }

    #[test]
    fn repetition() {
        let r = sweep(&zoo::repetition_1d(4, Boundary::Open).unwrap(), 0);
        assert!(r.d1 <= 2);
        assert_eq!(r.compact.weight(), 1);
    }

    #[test]
    fn small_lattice_rejected() {
        let code = zoo::steane_chain(1).unwrap();
        let groups = CodeGroups::new(&code).unwrap();
        let e = strip_sweep(&code, &groups, 0, &Budget::default()).unwrap_err();
        assert!(e.to_string().contains("2(r-1)^2"));
    }
}
