//! `localcodes`: batch front-end for the code zoo, metrics and transforms.
//!
//! Every analysis subcommand prints (or writes to `--out`) a versioned JSON
//! envelope. Exit status: 0 success, 2 when a checked bound fails, 1 for
//! usage, input and capacity errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use localcodes::group::CodeGroups;
use localcodes::metrics::{
    audit_family, barrier_exact, barrier_walk_bound, distance_exact, linear_distance, BarrierResult, Mode, Schedule,
    Target,
};
use localcodes::report::{csv_table, input_digest, Envelope, WalkJson};
use localcodes::transforms::{
    clean, minimal_block_search, restriction_audit, strip_sweep, CleanResult, MinBlockOutcome, RestrictionCase,
};
use localcodes::zoo::Family;
use localcodes::{parse_code, serialize_code, Boundary, Budget, CodeSpec, Error, PauliOp, Region};

#[derive(Parser)]
#[command(
    name = "localcodes",
    version,
    about = "Distance, linear distance, energy barrier and cleaning for local codes"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Coset-node cap for the exact barrier search [default: 2^24]
    #[arg(long, global = true, env = "LOCALCODES_NODE_CAP")]
    node_cap: Option<u64>,
    /// Largest weight tried by weight enumeration [default: 6]
    #[arg(long, global = true, env = "LOCALCODES_WEIGHT_CAP")]
    weight_cap: Option<usize>,
    /// Bytes of search state for the trellis and barrier searches [default: 4 GiB]
    #[arg(long, global = true, env = "LOCALCODES_MEM_BUDGET")]
    mem_budget: Option<u64>,
    /// Worker threads for audits
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write the CSV table (audit only)
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

impl Common {
    fn budget(&self) -> Result<Budget> {
        let mut b = Budget::from_env().map_err(|e| anyhow!(e))?;
        if let Some(v) = self.node_cap {
            b.node_cap = v;
        }
        if let Some(v) = self.weight_cap {
            b.weight_cap = v;
        }
        if let Some(v) = self.mem_budget {
            b.mem_budget = v;
        }
        Ok(b)
    }
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// repetition, toric, generalized-toric, surface, bacon-shor, heisenberg, steane-chain
    #[arg(long)]
    family: Option<String>,
    /// Lattice dimension for generalized-toric and heisenberg
    #[arg(long)]
    dim: Option<usize>,
    /// open or periodic (repetition only)
    #[arg(long)]
    boundary: Option<Boundary>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        let name = self.family.as_deref().ok_or_else(|| anyhow!("give --code FILE or --family NAME --L SIZE"))?;
        Ok(Family::parse(name, self.dim, self.boundary)?)
    }
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Code file
    #[arg(long, conflicts_with = "family")]
    code: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Linear size (block count for steane-chain)
    #[arg(long = "L", requires = "family")]
    size: Option<usize>,
}

impl CodeArgs {
    /// The code and the bytes it is digested from.
    fn load(&self) -> Result<(CodeSpec, Vec<u8>)> {
        if let Some(path) = &self.code {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", path.display()))?;
            let code = parse_code(&text).with_context(|| format!("parsing {}", path.display()))?;
            return Ok((code, bytes));
        }
        let family = self.family.family()?;
        let size = self.size.ok_or_else(|| anyhow!("--family needs --L"))?;
        let code = family.build(size)?;
        let bytes = serialize_code(&code).into_bytes();
        Ok((code, bytes))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a zoo code in the code file format
    Zoo {
        family: String,
        #[arg(long = "L")]
        size: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        boundary: Option<Boundary>,
    },
    /// Parse a code and check its declared locality
    Validate {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exact minimum weight of a target operator
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        /// stabilizer, subsystem, bare, gauge-qubits:<i,..> or sector:<i,..>
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Least slab width supporting a target operator
    Lindist {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Energy barrier of the target set
    Barrier {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        mode: Option<Mode>,
        /// On capacity errors, report the walk bound of a minimum-weight target
        #[arg(long)]
        walk_fallback: bool,
    },
    /// Clean an operator off a region
    Clean {
        #[command(flatten)]
        code: CodeArgs,
        /// full, slab:AXIS:START:WIDTH, box:LO:HI or sites:C;C;.. (coordinates comma separated)
        #[arg(long)]
        region: String,
        /// Operator text such as `Z(0,1;1) Z(1,1;1)`; defaults to the first logical X
        #[arg(long)]
        op: Option<String>,
    },
    /// Strip sweep certifying a logical of small extent
    Sweep {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Logical content of the code restricted to a region
    RestrictAudit {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        region: String,
    },
    /// Smallest contiguous block that encodes a logical qubit
    MinBlock {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Every feasible metric and bound check over a family
    Audit {
        #[command(flatten)]
        family: FamilyArgs,
        /// Sizes: `2..4` (inclusive), `2..=4` or `2,3,5`
        #[arg(long = "L")]
        sizes: String,
    },
}

/// Outcome of a subcommand: the JSON result and whether every check held.
struct Report {
    result: Value,
    holds: bool,
}

impl Report {
    fn ok(result: Value) -> Self {
        Report { result, holds: true }
    }
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let bad = || anyhow!("bad size list `{s}` (expected 2..4, 2..=4 or 2,3,5)");
    let sizes: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        (a..=b).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if sizes.is_empty() {
        return Err(bad());
    }
    Ok(sizes)
}

fn parse_coord(s: &str) -> Result<Vec<u32>> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| anyhow!("bad coordinate `{s}`"))).collect()
}

fn parse_region(code: &CodeSpec, spec: &str) -> Result<Region> {
    let lat = code.lattice();
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let region = match kind {
        "full" => lat.full_region(),
        "slab" => {
            let v: Vec<usize> = rest
                .split(':')
                .map(|t| t.parse())
                .collect::<Result<_, _>>()
                .map_err(|_| anyhow!("bad slab `{spec}` (expected slab:AXIS:START:WIDTH)"))?;
            let [axis, start, width] = v[..] else { bail!("bad slab `{spec}` (expected slab:AXIS:START:WIDTH)") };
            lat.slab(axis, start, width)?
        }
        "box" => {
            let (lo, hi) = rest.split_once(':').ok_or_else(|| anyhow!("bad box `{spec}` (expected box:LO:HI)"))?;
            lat.boxed(&parse_coord(lo)?, &parse_coord(hi)?)?
        }
        "sites" => {
            let coords =
                rest.split(';').filter(|t| !t.trim().is_empty()).map(parse_coord).collect::<Result<Vec<_>>>()?;
            let mut sites = Vec::with_capacity(coords.len());
            for c in &coords {
                if c.len() != lat.dim() || !lat.contains_coord(c) {
                    bail!("site {c:?} is not on the lattice");
                }
                sites.push(lat.site_index(c));
            }
            Region::from_sites(lat, sites)?
        }
        _ => bail!("unknown region `{spec}` (expected full, slab:.., box:.. or sites:..)"),
    };
    Ok(region)
}

fn groups_and_target(code: &CodeSpec, mode: Option<&Mode>) -> Result<(CodeGroups, Target, Mode)> {
    let groups = CodeGroups::new(code)?;
    let mode = mode.cloned().unwrap_or_else(|| Mode::default_for(code.role()));
    let target = Target::new(&groups, &mode)?;
    Ok((groups, target, mode))
}

fn code_summary(code: &CodeSpec, groups: &CodeGroups) -> Value {
    json!({
        "name": code.name(),
        "dim": code.lattice().dim(),
        "L": code.lattice().size(),
        "boundary": code.lattice().boundary().to_string(),
        "role": code.role().to_string(),
        "n": code.num_qubits(),
        "k": groups.k(),
        "generators": code.generators().len(),
        "r": code.declared_r(),
    })
}

fn op_json(code: &CodeSpec, p: &PauliOp) -> Value {
    json!({ "text": code.op_text(p), "weight": p.weight() })
}

fn barrier_json(code: &CodeSpec, b: &BarrierResult) -> Value {
    json!({
        "value": b.value,
        "method": b.method,
        "nodes": b.nodes,
        "walk": WalkJson::new(code, &b.walk),
        "end": op_json(code, &b.walk.end),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let common = &cli.common;
    let budget = common.budget()?;
    let mut digest_parts: Vec<Vec<u8>> = Vec::new();
    let (name, report) = match &cli.command {
        Command::Zoo { family, size, dim, boundary } => {
            let code = Family::parse(family, *dim, *boundary)?.build(*size)?;
            let text = serialize_code(&code);
            match &common.out {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Validate { code } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            let locality = code.validate_locality()?;
            let groups = CodeGroups::new(&code)?;
            let result = json!({
                "code": code_summary(&code, &groups),
                "r_actual": locality.r_actual,
                "max_participation": locality.max_participation,
                "gauge_qubits": groups.logicals.gauge.len(),
                "stabilizer_rank": groups.stabilizer.rank(),
                "gauge_rank": groups.gauge.rank(),
            });
            ("validate", Report::ok(result))
        }
        Command::Distance { code, mode } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            let (groups, target, mode) = groups_and_target(&code, mode.as_ref())?;
            digest_parts.push(mode.to_string().into_bytes());
            let d = distance_exact(code.layout(), &target, &budget)?;
            let result = json!({
                "code": code_summary(&code, &groups),
                "mode": mode.to_string(),
                "distance": d.outcome.value(),
                "method": d.method,
                "witness": d.outcome.witness().map(|w| op_json(&code, w)),
            });
            ("distance", Report::ok(result))
        }
        Command::Lindist { code, mode, axis } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            let (groups, target, mode) = groups_and_target(&code, mode.as_ref())?;
            digest_parts.push(format!("{mode} axis={axis}").into_bytes());
            let ld = linear_distance(code.layout(), &target, *axis, &budget)?;
            let result = json!({
                "code": code_summary(&code, &groups),
                "mode": mode.to_string(),
                "axis": axis,
                "d1": ld.as_ref().map(|l| l.value),
                "slab_start": ld.as_ref().map(|l| l.slab_start),
                "witness": ld.as_ref().map(|l| op_json(&code, &l.witness)),
            });
            ("lindist", Report::ok(result))
        }
        Command::Barrier { code, mode, walk_fallback } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            let (groups, target, mode) = groups_and_target(&code, mode.as_ref())?;
            digest_parts.push(format!("{mode} walk_fallback={walk_fallback}").into_bytes());
            let barrier = match barrier_exact(&code, &target, &budget) {
                Ok(b) => b.map(|b| barrier_json(&code, &b)),
                Err(e @ Error::Capacity { .. }) if *walk_fallback => {
                    let d = distance_exact(code.layout(), &target, &budget)?;
                    let w = d.outcome.witness().ok_or_else(|| anyhow!("{e}"))?;
                    let b = barrier_walk_bound(&code, &target, w, &Schedule::QubitOrder)?;
                    let mut v = barrier_json(&code, &b);
                    v["exact_skipped"] = json!(e.to_string());
                    Some(v)
                }
                Err(e) => return Err(e.into()),
            };
            let result = json!({
                "code": code_summary(&code, &groups),
                "mode": mode.to_string(),
                "barrier": barrier,
            });
            ("barrier", Report::ok(result))
        }
        Command::Clean { code, region, op } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            digest_parts.push(format!("region={region} op={}", op.as_deref().unwrap_or("")).into_bytes());
            let groups = CodeGroups::new(&code)?;
            let m = parse_region(&code, region)?;
            let p = match op {
                Some(text) => code.parse_op(text)?,
                None => groups.logicals.used.first().ok_or(Error::NoLogicals)?.0.clone(),
            };
            let outcome = match clean(&code, &groups, &p, &m)? {
                CleanResult::Cleaned { stabilizer, cleaned, factors } => json!({
                    "outcome": "cleaned",
                    "stabilizer": op_json(&code, &stabilizer),
                    "cleaned": op_json(&code, &cleaned),
                    "factors": factors,
                }),
                CleanResult::Trapped { logical } => json!({
                    "outcome": "trapped",
                    "logical": op_json(&code, &logical),
                }),
            };
            let result = json!({
                "code": code_summary(&code, &groups),
                "region": m.coords(),
                "input": op_json(&code, &p),
                "result": outcome,
            });
            ("clean", Report::ok(result))
        }
        Command::Sweep { code, axis } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            digest_parts.push(format!("axis={axis}").into_bytes());
            let groups = CodeGroups::new(&code)?;
            let s = strip_sweep(&code, &groups, *axis, &budget)?;
            let result = json!({
                "code": code_summary(&code, &groups),
                "axis": s.axis,
                "r": s.r,
                "strips": s.strips,
                "strip": s.strip,
                "source": s.source,
                "witness": op_json(&code, &s.witness),
                "d1": s.d1,
                "compact": op_json(&code, &s.compact),
                "within_r": s.within_r(),
            });
            ("sweep", Report { result, holds: s.within_r() })
        }
        Command::RestrictAudit { code, region } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            digest_parts.push(format!("region={region}").into_bytes());
            let (groups, target, _) = groups_and_target(&code, None)?;
            let m = parse_region(&code, region)?;
            let d = distance_exact(code.layout(), &target, &budget)?.outcome.value();
            let a = restriction_audit(&code, &groups, &m, d, &budget)?;
            let holds = !matches!(a.case, RestrictionCase::DistanceBound { holds: false, .. });
            let result = json!({
                "code": code_summary(&code, &groups),
                "region": m.coords(),
                "qubits": a.qubits,
                "k_m": a.k_m,
                "case": a.case,
                "witness": a.witness.as_ref().map(|w| op_json(&code, w)),
            });
            ("restrict-audit", Report { result, holds })
        }
        Command::MinBlock { code, axis } => {
            let (code, bytes) = code.load()?;
            digest_parts.push(bytes);
            digest_parts.push(format!("axis={axis}").into_bytes());
            let groups = CodeGroups::new(&code)?;
            let (block, holds) = match minimal_block_search(&code, &groups, *axis, &budget)? {
                MinBlockOutcome::Found(b) => {
                    let v = json!({
                        "axis": b.axis,
                        "start": b.start,
                        "width": b.width,
                        "region": b.region.coords(),
                        "k_m": b.k_m,
                        "d_m": b.d_m,
                        "witness": op_json(&code, &b.witness),
                        "shell_size": b.shell_size,
                        "d": b.d,
                        "r": b.r,
                        "checks": b.checks,
                    });
                    (Some(v), b.all_hold())
                }
                MinBlockOutcome::NoBlock => (None, true),
            };
            let result = json!({ "code": code_summary(&code, &groups), "block": block });
            ("min-block", Report { result, holds })
        }
        Command::Audit { family, sizes } => {
            let fam = family.family()?;
            let sizes = parse_sizes(sizes)?;
            digest_parts.push(format!("family={} sizes={sizes:?} budget={budget:?}", fam.name()).into_bytes());
            let report = audit_family(&fam, &sizes, &budget, common.jobs)?;
            if let Some(path) = &common.csv {
                write(path, &csv_table(&report.records))?;
            }
            let holds = report.all_hold();
            ("audit", Report { result: serde_json::to_value(&report)?, holds })
        }
    };
    let digest = input_digest(digest_parts.iter().map(Vec::as_slice));
    let text = Envelope::new(name, digest, report.result).to_json();
    match &common.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if report.holds {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: a checked bound does not hold; see the report");
        Ok(ExitCode::from(2))
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_lists() {
        assert_eq!(parse_sizes("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_sizes("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_sizes("3,5").unwrap(), vec![3, 5]);
        assert!(parse_sizes("x").is_err());
    }

    #[test]
    fn regions() {
        let code = localcodes::zoo::toric_2d(3).unwrap();
        assert_eq!(parse_region(&code, "full").unwrap().len(), 9);
        assert_eq!(parse_region(&code, "slab:0:1:2").unwrap().len(), 6);
        assert_eq!(parse_region(&code, "box:0,0:1,1").unwrap().len(), 4);
        assert_eq!(parse_region(&code, "sites:0,0;2,2").unwrap().len(), 2);
        assert!(parse_region(&code, "sites:5,5").is_err());
        assert!(parse_region(&code, "slab:0:1").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
