//! Command-line front end: argument definitions and subcommand drivers.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use sigperm_core::catalog::parse_generator_list;
use sigperm_core::harness::verify_with;
use sigperm_core::pi::gpi_projectors;
use sigperm_core::sigma::sigma_permutable;
use sigperm_core::{
    all_subgroups, build_group, catalog, enumerate_sigma_partitions, parse_claim_filter,
    parse_sigma_spec, prime_support, run_suite, GroupContext, GroupSpec, Permutability,
    PermutabilityLevel, PrimeSet, SigmaAnalysis, SigmaPartition, SubgroupLattice, SuiteOutcome,
    DEFAULT_ORDER_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "sigperm",
    version,
    about = "σ-permutability of subgroups of finite permutation groups"
)]
pub struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest group order any command will enumerate.
    #[arg(long, global = true, env = "SIGPERM_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    pub order_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, prime divisors and normal subgroups.
    Info { group: String },
    /// Every subgroup, in lattice order.
    Subgroups {
        group: String,
        /// Read the lattice from this file if present, otherwise write it there.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// 𝔊_π-projectors for a set of primes.
    Projectors {
        group: String,
        /// Comma-separated primes, e.g. `2,5`.
        #[arg(long)]
        pi: String,
    },
    /// Tests one subgroup for σ-permutability.
    Permutable {
        group: String,
        /// Generators of H separated by `;`, e.g. `(1 2);(3 4)`.
        #[arg(long)]
        h: String,
        /// σ-spec such as `2,5|3`, `s1` or `2|*`.
        #[arg(long)]
        sigma: String,
        /// 1, 2, 3 or skiba.
        #[arg(long)]
        level: String,
    },
    /// Checks claims on one group.
    Verify {
        #[arg(long)]
        group: String,
        /// σ-spec; every partition of π(G) when omitted.
        #[arg(long)]
        sigma: Option<String>,
        /// Comma-separated claim ids, or `all`.
        #[arg(long, default_value = "all")]
        claims: String,
        /// Report zero timings so output is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
    /// Checks claims across the catalog.
    Scan {
        #[arg(long)]
        max_order: usize,
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Serialize)]
struct SubgroupRecord {
    index: usize,
    order: usize,
    normal: bool,
    generators: Vec<String>,
}

fn record(lattice: &SubgroupLattice, i: usize) -> SubgroupRecord {
    let g = lattice.group();
    SubgroupRecord {
        index: i,
        order: lattice.order(i),
        normal: lattice.is_normal(i),
        generators: lattice
            .subgroup(i)
            .generators()
            .iter()
            .map(|&x| g.element(x).to_string())
            .collect(),
    }
}

fn print_json<W: Write>(out: &mut W, value: &impl Serialize) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn load_lattice(spec_text: &str, order_cap: usize) -> Result<(GroupSpec, SubgroupLattice)> {
    let spec: GroupSpec = spec_text.parse()?;
    let group = build_group(&spec, order_cap)?;
    let lattice = all_subgroups(Arc::new(group))?;
    Ok((spec, lattice))
}

fn resolve_sigma(text: &str, lattice: &SubgroupLattice) -> Result<SigmaPartition> {
    let spec = parse_sigma_spec(text)?;
    Ok(spec.resolve(&prime_support(lattice.group().order()))?)
}

fn parse_primes(text: &str) -> Result<PrimeSet> {
    let mut primes = Vec::new();
    for tok in text.split(',').map(str::trim) {
        primes.push(
            tok.parse::<u32>()
                .with_context(|| format!("invalid prime `{tok}`"))?,
        );
    }
    Ok(PrimeSet::new(primes)?)
}

/// Runs one parsed command, writing to `out`; returns the process exit code.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    match &cli.command {
        Command::Info { group } => info(cli, out, group),
        Command::Subgroups { group, cache } => subgroups(cli, out, group, cache.as_ref()),
        Command::Projectors { group, pi } => projectors(cli, out, group, pi),
        Command::Permutable {
            group,
            h,
            sigma,
            level,
        } => permutable(cli, out, group, h, sigma, level),
        Command::Verify {
            group,
            sigma,
            claims,
            no_timing,
        } => verify(cli, out, group, sigma.as_deref(), claims, *no_timing),
        Command::Scan {
            max_order,
            claims,
            no_timing,
        } => scan(cli, out, *max_order, claims, *no_timing),
    }
}

fn info<W: Write>(cli: &Cli, out: &mut W, group: &str) -> Result<i32> {
    let (spec, lattice) = load_lattice(group, cli.order_cap)?;
    let g = lattice.group();
    let primes = prime_support(g.order());
    let normals: Vec<SubgroupRecord> = lattice
        .normal_subgroups()
        .into_iter()
        .map(|i| record(&lattice, i))
        .collect();
    if cli.json {
        print_json(
            out,
            &json!({
                "group": spec.to_string(),
                "order": g.order(),
                "degree": g.degree(),
                "primes": primes,
                "soluble": g.is_soluble(),
                "subgroup_count": lattice.len(),
                "normal_subgroups": normals,
            }),
        )?;
    } else {
        writeln!(out, "group: {spec}")?;
        writeln!(out, "order: {}", g.order())?;
        writeln!(out, "degree: {}", g.degree())?;
        writeln!(out, "primes: {primes}")?;
        writeln!(out, "soluble: {}", g.is_soluble())?;
        writeln!(out, "subgroups: {}", lattice.len())?;
        writeln!(out, "normal subgroups: {}", normals.len())?;
        for n in &normals {
            writeln!(out, "  {}", lattice.describe(n.index))?;
        }
    }
    Ok(0)
}

fn subgroups<W: Write>(
    cli: &Cli,
    out: &mut W,
    group: &str,
    cache: Option<&PathBuf>,
) -> Result<i32> {
    let spec: GroupSpec = group.parse()?;
    let g = Arc::new(build_group(&spec, cli.order_cap)?);
    let lattice = match cache {
        Some(path) if path.exists() => {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            SubgroupLattice::read_cache(g, BufReader::new(file))?
        }
        Some(path) => {
            let lattice = all_subgroups(g)?;
            let file =
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            lattice.write_cache(std::io::BufWriter::new(file))?;
            lattice
        }
        None => all_subgroups(g)?,
    };
    let records: Vec<SubgroupRecord> = (0..lattice.len()).map(|i| record(&lattice, i)).collect();
    if cli.json {
        print_json(
            out,
            &json!({ "group": spec.to_string(), "count": records.len(), "subgroups": records }),
        )?;
    } else {
        writeln!(out, "{} subgroups of {spec}", records.len())?;
        for r in &records {
            let mark = if r.normal { " normal" } else { "" };
            writeln!(out, "{:>5}  {}{mark}", r.index, lattice.describe(r.index))?;
        }
    }
    Ok(0)
}

fn projectors<W: Write>(cli: &Cli, out: &mut W, group: &str, pi: &str) -> Result<i32> {
    let (spec, lattice) = load_lattice(group, cli.order_cap)?;
    let pi = parse_primes(pi)?;
    let found = gpi_projectors(&lattice, &pi);
    let records: Vec<SubgroupRecord> = found.iter().map(|&i| record(&lattice, i)).collect();
    if cli.json {
        print_json(
            out,
            &json!({ "group": spec.to_string(), "pi": pi, "count": records.len(), "projectors": records }),
        )?;
    } else {
        writeln!(
            out,
            "{} projectors for pi = {{{pi}}} in {spec}",
            records.len()
        )?;
        for r in &records {
            writeln!(out, "  {}", lattice.describe(r.index))?;
        }
    }
    Ok(0)
}

fn permutable<W: Write>(
    cli: &Cli,
    out: &mut W,
    group: &str,
    h: &str,
    sigma: &str,
    level: &str,
) -> Result<i32> {
    let (spec, lattice) = load_lattice(group, cli.order_cap)?;
    let Some(level) = PermutabilityLevel::parse(level) else {
        bail!("invalid level `{level}` (expected 1, 2, 3 or skiba)");
    };
    let sigma = resolve_sigma(sigma, &lattice)?;
    let g = lattice.group();
    let gens = parse_generator_list(h, g.degree())?;
    let sub = g.subgroup_from_perms(&gens)?;
    let index = lattice
        .find(&sub)
        .context("subgroup missing from lattice")?;
    let result = sigma_permutable(&lattice, index, &sigma, level)?;
    let (verdict, block, witness) = match &result {
        Permutability::Holds => ("true", None, None),
        Permutability::Fails(w) => ("false", Some(w.block.to_string()), Some(w.subgroup)),
        Permutability::Undefined { block } => ("undefined", Some(block.to_string()), None),
    };
    if cli.json {
        print_json(
            out,
            &json!({
                "group": spec.to_string(),
                "h": record(&lattice, index),
                "sigma": sigma.to_string(),
                "level": level.to_string(),
                "result": verdict,
                "block": block,
                "witness": witness.map(|w| record(&lattice, w)),
            }),
        )?;
    } else {
        writeln!(out, "H = {}", lattice.describe(index))?;
        writeln!(out, "sigma = {sigma}, level {level}: {verdict}")?;
        if let Some(b) = block {
            writeln!(out, "block: {{{b}}}")?;
        }
        if let Some(w) = witness {
            writeln!(out, "does not permute with: {}", lattice.describe(w))?;
        }
    }
    Ok(0)
}

fn emit_outcome<W: Write>(
    cli: &Cli,
    out: &mut W,
    outcome: SuiteOutcome,
    no_timing: bool,
) -> Result<i32> {
    let outcome = if no_timing {
        outcome.without_timing()
    } else {
        outcome
    };
    if cli.json {
        for r in &outcome.reports {
            writeln!(out, "{}", r.to_json_line())?;
        }
        writeln!(out, "{}", json!({ "summary": outcome.summary }))?;
    } else {
        for r in &outcome.reports {
            writeln!(out, "{r}")?;
        }
        let s = &outcome.summary;
        writeln!(
            out,
            "summary: {} groups, {} sigma units, {} reports: {} pass, {} fail, {} inapplicable; \
             {} theorem failures, {} conjecture findings; exit {}",
            s.groups,
            s.sigma_units,
            s.reports,
            s.pass,
            s.fail,
            s.inapplicable,
            s.theorem_failures,
            s.conjecture_findings,
            s.exit_code
        )?;
    }
    Ok(outcome.exit_code())
}

fn verify<W: Write>(
    cli: &Cli,
    out: &mut W,
    group: &str,
    sigma: Option<&str>,
    claims: &str,
    no_timing: bool,
) -> Result<i32> {
    let claims = parse_claim_filter(claims)?;
    let (spec, lattice) = load_lattice(group, cli.order_cap)?;
    let ctx = GroupContext::new(spec.to_string(), Arc::new(lattice));
    let sigmas = match sigma {
        Some(text) => vec![resolve_sigma(text, ctx.lattice())?],
        None => enumerate_sigma_partitions(&prime_support(ctx.lattice().group().order()))?,
    };
    let mut reports = Vec::new();
    for sigma in sigmas {
        let analysis = SigmaAnalysis::new(ctx.lattice(), sigma)?;
        reports.extend(claims.iter().map(|&c| verify_with(&ctx, &analysis, c)));
    }
    emit_outcome(cli, out, SuiteOutcome::from_reports(reports), no_timing)
}

fn scan<W: Write>(
    cli: &Cli,
    out: &mut W,
    max_order: usize,
    claims: &str,
    no_timing: bool,
) -> Result<i32> {
    let claims = parse_claim_filter(claims)?;
    if max_order > cli.order_cap {
        bail!(
            "max order {max_order} exceeds the order cap {}",
            cli.order_cap
        );
    }
    let entries = catalog(max_order, cli.order_cap)?;
    let outcome = run_suite(&entries, max_order, &claims)?;
    emit_outcome(cli, out, outcome, no_timing)
}
