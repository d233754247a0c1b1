//! Per-instance metric tables with the bound checks they support.
//!
//! Every metric that cannot be computed within the budget is recorded as a
//! skip with its reason. Checks are finite-size instances of the bounds;
//! the constancy check across sizes is a finite-range observation, not a
//! proof of an asymptotic statement.

use serde::Serialize;

use crate::budget::Budget;
use crate::code::{CodeSpec, Role};
use crate::error::{Error, Result};
use crate::group::CodeGroups;
use crate::metrics::barrier::{barrier_exact, barrier_walk_bound};
use crate::metrics::dp::distance_exact;
use crate::metrics::lindist::linear_distance;
use crate::metrics::target::{Mode, Target};
use crate::metrics::walk::Schedule;
use crate::report::WalkJson;
use crate::transforms::sweep::strip_sweep;
use crate::zoo::Family;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metric {
    pub value: Option<usize>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub walk: Option<WalkJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub inequality: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub margin: i64,
}

impl Check {
    /// `lhs <= rhs`.
    pub fn le(name: &str, inequality: &str, lhs: usize, rhs: usize) -> Check {
        let (lhs, rhs) = (lhs as i64, rhs as i64);
        Check { name: name.into(), inequality: inequality.into(), lhs, rhs, holds: lhs <= rhs, margin: rhs - lhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skip {
    pub metric: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub family: String,
    pub size: usize,
    pub name: String,
    pub dim: usize,
    pub n: usize,
    pub k: usize,
    pub g: usize,
    pub r: usize,
    pub r_actual: usize,
    pub participation: usize,
    pub mode: String,
    pub distance: Metric,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bare_weight: Option<Metric>,
    pub d1: Option<Metric>,
    pub sweep_d1: Option<Metric>,
    pub barrier: Option<Metric>,
    pub barrier_walk_row: Option<Metric>,
    pub barrier_walk_min_weight: Option<Metric>,
    pub checks: Vec<Check>,
    pub skipped: Vec<Skip>,
}

impl InstanceRecord {
    /// Best barrier figure available and how it was obtained.
    pub fn barrier_summary(&self) -> (Option<usize>, Option<String>) {
        for m in [&self.barrier, &self.barrier_walk_row, &self.barrier_walk_min_weight].into_iter().flatten() {
            if m.value.is_some() {
                return (m.value, Some(m.method.clone()));
            }
        }
        (None, None)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub family: String,
    pub sizes: Vec<usize>,
    pub records: Vec<InstanceRecord>,
    /// Checks across the size range.
    pub series: Vec<Check>,
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(InstanceRecord::all_hold) && self.series.iter().all(|c| c.holds)
    }
}

fn skip_or<T>(r: Result<T>, metric: &str, skipped: &mut Vec<Skip>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ (Error::Capacity { .. } | Error::Precondition(_) | Error::Unsupported(_) | Error::NoLogicals)) => {
            skipped.push(Skip { metric: metric.into(), reason: e.to_string() });
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Computes every feasible metric of one code and the bounds they bear on.
pub fn audit_code(
    code: &CodeSpec,
    family: &str,
    size: usize,
    gauge_qubit_setting: bool,
    budget: &Budget,
) -> Result<InstanceRecord> {
    let locality = code.validate_locality()?;
    let groups = CodeGroups::new(code)?;
    let layout = code.layout();
    let lat = layout.lattice();
    let r = code.declared_r();
    let cross = lat.size().pow(lat.dim() as u32 - 1);
    let mode = Mode::default_for(code.role());
    let target = Target::new(&groups, &mode)?;
    let mut skipped = Vec::new();
    let mut checks = Vec::new();

    let dist = skip_or(distance_exact(layout, &target, budget), "distance", &mut skipped)?;
    let d_witness = dist.as_ref().and_then(|r| r.outcome.witness().cloned());
    let distance = match &dist {
        Some(res) => Metric {
            value: res.outcome.value(),
            method: format!("{:?}", res.method).to_lowercase(),
            witness: d_witness.as_ref().map(|w| code.op_text(w)),
            walk: None,
        },
        None => Metric { value: None, method: "skipped".into(), witness: None, walk: None },
    };
    let d = distance.value;

    let bare_weight = if code.role() == Role::Gauge {
        let t = Target::new(&groups, &Mode::Bare)?;
        skip_or(distance_exact(layout, &t, budget), "bare_weight", &mut skipped)?.map(|res| Metric {
            value: res.outcome.value(),
            method: format!("{:?}", res.method).to_lowercase(),
            witness: res.outcome.witness().map(|w| code.op_text(w)),
            walk: None,
        })
    } else {
        None
    };

    let d1 = skip_or(linear_distance(layout, &target, 0, budget), "d1", &mut skipped)?.flatten().map(|l| Metric {
        value: Some(l.value),
        method: "slab_nullspace".into(),
        witness: Some(code.op_text(&l.witness)),
        walk: None,
    });

    let sweep = skip_or(strip_sweep(code, &groups, 0, budget), "sweep_d1", &mut skipped)?;
    let sweep_d1 = sweep.as_ref().map(|s| Metric {
        value: Some(s.d1),
        method: "strip_sweep".into(),
        witness: Some(code.op_text(&s.witness)),
        walk: None,
    });

    let barrier = skip_or(barrier_exact(code, &target, budget), "barrier", &mut skipped)?.flatten().map(|b| Metric {
        value: Some(b.value),
        method: serde_json::to_value(b.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
        witness: Some(code.op_text(&b.walk.end)),
        walk: Some(WalkJson::new(code, &b.walk)),
    });

    let walk_metric = |w: &crate::pauli::PauliOp, schedule: &Schedule| -> Result<Metric> {
        let b = barrier_walk_bound(code, &target, w, schedule)?;
        Ok(Metric {
            value: Some(b.value),
            method: "walk_upper_bound".into(),
            witness: Some(code.op_text(w)),
            walk: Some(WalkJson::new(code, &b.walk)),
        })
    };
    let barrier_walk_row = match &sweep {
        Some(s) => Some(walk_metric(&s.compact, &Schedule::RowByRow { axis: 0 })?),
        None => None,
    };
    let barrier_walk_min_weight = match &d_witness {
        Some(w) => Some(walk_metric(w, &Schedule::QubitOrder)?),
        None => None,
    };

    if let Some(d) = d {
        match code.role() {
            Role::Stabilizer => checks.push(Check::le("distance_bound", "d <= r L^(D-1)", d, r * cross)),
            Role::Gauge => {
                checks.push(Check::le("subsystem_distance_bound", "d <= 3 r L^(D-1)", d, 3 * r * cross));
                if gauge_qubit_setting {
                    checks.push(Check::le("gauge_distance_bound", "d(G) <= r L^(D-1)", d, r * cross));
                }
            }
        }
    }
    if let Some(s) = &sweep {
        checks.push(Check::le("linear_distance_bound", "d1 <= r (sweep witness)", s.d1, r));
        checks.push(Check::le(
            "sweep_weight_bound",
            "|P| <= r L^(D-1) (compact sweep witness)",
            s.compact.weight(),
            r * cross,
        ));
        if let Some(v) = d1.as_ref().and_then(|m| m.value) {
            checks.push(Check::le("exact_linear_distance_bound", "d1 <= r", v, r));
        }
    }
    if let (Some(b), Some(w)) =
        (barrier.as_ref().and_then(|m| m.value), barrier_walk_min_weight.as_ref().and_then(|m| m.value))
    {
        checks.push(Check::le("barrier_chain_lower", "d‡ <= walk(min-weight witness)", b, w));
    }
    if let (Some(w), Some(d)) = (barrier_walk_min_weight.as_ref().and_then(|m| m.value), d) {
        checks.push(Check::le(
            "barrier_chain_upper",
            "walk(min-weight witness) <= 2 participation d",
            w,
            2 * locality.max_participation * d,
        ));
    }

    Ok(InstanceRecord {
        family: family.into(),
        size,
        name: code.name().into(),
        dim: lat.dim(),
        n: code.num_qubits(),
        k: groups.k(),
        g: groups.g(),
        r,
        r_actual: locality.r_actual,
        participation: locality.max_participation,
        mode: mode.to_string(),
        distance,
        bare_weight,
        d1,
        sweep_d1,
        barrier,
        barrier_walk_row,
        barrier_walk_min_weight,
        checks,
        skipped,
    })
}

/// Finite-range version of "eventually constant": the values are
/// non-increasing from some size on and the last two are equal.
pub fn constant_tail(name: &str, values: &[(usize, usize)]) -> Option<Check> {
    if values.len() < 2 {
        return None;
    }
    let vals: Vec<usize> = values.iter().map(|v| v.1).collect();
    let mut start = vals.len() - 1;
    while start > 0 && vals[start - 1] >= vals[start] {
        start -= 1;
    }
    let tail = &vals[start..];
    let spread = tail.iter().max().unwrap() - tail.iter().min().unwrap();
    let last_equal = vals[vals.len() - 1] == vals[vals.len() - 2];
    let from = values[start].0;
    Some(Check {
        name: name.into(),
        inequality: format!("max - min over L >= {from} is 0 (finite range only)"),
        lhs: if last_equal { 0 } else { spread as i64 },
        rhs: 0,
        holds: last_equal,
        margin: if last_equal { 0 } else { -(spread as i64) },
    })
}

/// Audits `family` at each size; instances run on up to `jobs` threads and
/// records keep the order of `sizes`.
pub fn audit_family(family: &Family, sizes: &[usize], budget: &Budget, jobs: usize) -> Result<AuditReport> {
    let name = family.name();
    let gauge_setting = matches!(family, Family::SteaneChain);
    let run = |size: usize| -> Result<InstanceRecord> {
        let code = family.build(size)?;
        audit_code(&code, &name, size, gauge_setting, budget)
    };
    let jobs = jobs.max(1).min(sizes.len().max(1));
    let mut results: Vec<Option<Result<InstanceRecord>>> = (0..sizes.len()).map(|_| None).collect();
    if jobs == 1 {
        for (i, &s) in sizes.iter().enumerate() {
            results[i] = Some(run(s));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let out = std::sync::Mutex::new(&mut results);
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= sizes.len() {
                        break;
                    }
                    let r = run(sizes[i]);
                    out.lock().expect("no poisoned workers")[i] = Some(r);
                });
            }
        });
    }
    let records = results.into_iter().map(|r| r.expect("every size ran")).collect::<Result<Vec<_>>>()?;

    let mut series = Vec::new();
    let walk_vals: Vec<(usize, usize)> =
        records.iter().filter_map(|r| r.barrier_walk_row.as_ref().and_then(|m| m.value).map(|v| (r.size, v))).collect();
    if records.first().is_some_and(|r| r.dim >= 2) {
        series.extend(constant_tail("constant_barrier", &walk_vals));
    }
    let notes = vec![
        "bounds are checked at the listed sizes only".to_string(),
        "gauge-code energies count anticommuting gauge terms, an upper bound on the true excitation energy".to_string(),
    ];
    Ok(AuditReport { family: name, sizes: sizes.to_vec(), records, series, notes })
}
