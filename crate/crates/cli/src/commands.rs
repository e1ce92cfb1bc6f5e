use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use quasidom::{
    bound_value, codec_read, codec_write, exact_gamma, g_value, gen_colored_tournament,
    gen_linear_orders, gen_random_posets, solve_detailed, verify_certificate, ColoredMultidigraph,
    DominationCertificate, InstanceDocument, SolverConfig,
};
use serde::Serialize;
use serde_json::json;

use crate::report::{emit, read_file, sha256_hex, write_atomic, CliError, CliResult, RunReport};
use crate::Model;

fn load_instance(path: &Path) -> CliResult<(ColoredMultidigraph, String)> {
    let bytes = read_file(path)?;
    let doc =
        codec_read(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let canonical = codec_write(&doc)?;
    Ok((doc.to_digraph()?, sha256_hex(&canonical)))
}

fn generate(
    model: Model,
    n: usize,
    k: usize,
    seed: u64,
    density: f64,
) -> CliResult<InstanceDocument> {
    Ok(match model {
        Model::Tournament => gen_colored_tournament(n, k, seed)?,
        Model::Linear => gen_linear_orders(n, k, seed)?,
        Model::Poset => gen_random_posets(n, k, seed, density)?,
    })
}

fn config(delta: f64, max_iterations: usize) -> CliResult<SolverConfig> {
    let cfg = SolverConfig {
        delta,
        max_iterations,
        ..SolverConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

pub fn gen(
    echo: Vec<String>,
    model: Model,
    n: usize,
    k: usize,
    seed: u64,
    density: f64,
    output: &Path,
) -> CliResult<ExitCode> {
    let doc = generate(model, n, k, seed, density)?;
    let bytes = codec_write(&doc)?;
    write_atomic(output, &bytes)?;
    eprintln!(
        "wrote {} ({} vertices, {} colors, {} arcs)",
        output.display(),
        doc.n,
        doc.k,
        doc.arcs.len()
    );
    emit(&RunReport::<_, ()> {
        command: echo,
        instance_hash: Some(sha256_hex(&bytes)),
        config: None,
        payload: json!({ "model": model, "n": doc.n, "k": doc.k, "arcs": doc.arcs.len(), "seed": seed }),
        timings: None,
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SolvePayload<'a> {
    size: usize,
    bound: u64,
    epsilon_eff: f64,
    dominating_set: &'a [usize],
    closed_input: bool,
    root_slack: Option<f64>,
    solver_calls: usize,
    leaves: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    tree: Option<quasidom::partition::TreeDump>,
}

pub fn solve(
    echo: Vec<String>,
    input: &Path,
    delta: f64,
    max_iterations: usize,
    dump_tree: bool,
    timings: bool,
    output: &Path,
) -> CliResult<ExitCode> {
    let (d, hash) = load_instance(input)?;
    let cfg = config(delta, max_iterations)?;
    let run = solve_detailed(&d, &cfg)?;
    let cert = &run.certificate;
    let mut bytes = serde_json::to_vec(cert).map_err(|e| CliError::Internal(e.to_string()))?;
    bytes.push(b'\n');
    write_atomic(output, &bytes)?;
    eprintln!(
        "dominating set of size {} (bound {}, {} leaves) written to {}",
        cert.size,
        cert.bound,
        cert.leaf_reports.len(),
        output.display()
    );
    emit(&RunReport {
        command: echo,
        instance_hash: Some(hash),
        config: Some(cfg),
        payload: SolvePayload {
            size: cert.size,
            bound: cert.bound,
            epsilon_eff: cert.epsilon_eff,
            dominating_set: &cert.dominating_set,
            closed_input: run.closed_input,
            root_slack: run.tree.root.slack,
            solver_calls: run.tree.solver_calls,
            leaves: run.leaves.len(),
            tree: dump_tree.then(|| run.tree.dump(&run.digraph)),
        },
        timings: timings.then(|| {
            json!({
                "tree_s": secs(run.timings.tree),
                "leaves_s": secs(run.timings.leaves),
                "verify_s": secs(run.timings.verify),
            })
        }),
    })?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(echo: Vec<String>, input: &Path, certificate: &Path) -> CliResult<ExitCode> {
    let (d, hash) = load_instance(input)?;
    let bytes = read_file(certificate)?;
    let cert: DominationCertificate = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: {e}", certificate.display())))?;
    let verdict = verify_certificate(&d, &cert);
    emit(&RunReport::<_, ()> {
        command: echo,
        instance_hash: Some(hash),
        config: None,
        payload: &verdict,
        timings: None,
    })?;
    if verdict.ok {
        eprintln!("certificate ok: size {} ≤ bound {}", cert.size, cert.bound);
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Rejected(verdict.reasons))
    }
}

pub fn gamma(
    echo: Vec<String>,
    input: &Path,
    cap: usize,
    size_cap: Option<usize>,
) -> CliResult<ExitCode> {
    let (d, hash) = load_instance(input)?;
    let result = exact_gamma(&d, size_cap.unwrap_or(d.n()), cap)?;
    if result.timed_out {
        eprintln!("no dominating set of size ≤ {}", result.gamma - 1);
    } else {
        eprintln!(
            "gamma = {} ({} nodes explored)",
            result.gamma, result.nodes_explored
        );
    }
    emit(&RunReport::<_, ()> {
        command: echo,
        instance_hash: Some(hash),
        config: None,
        payload: &result,
        timings: None,
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct GRow {
    k: usize,
    epsilon: f64,
    g: usize,
    bound: u64,
}

pub fn gtable(echo: Vec<String>, k_max: usize) -> CliResult<ExitCode> {
    if k_max == 0 {
        return Err(CliError::Input("--k-max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let epsilon = 1.0 / (2 * k) as f64;
        rows.push(GRow {
            k,
            epsilon,
            g: g_value(epsilon)?,
            bound: bound_value(k, epsilon)?,
        });
    }
    for r in &rows {
        eprintln!(
            "k={:<3} eps={:<10.6} g={:<5} bound={}",
            r.k, r.epsilon, r.g, r.bound
        );
    }
    emit(&RunReport::<_, ()> {
        command: echo,
        instance_hash: None,
        config: None,
        payload: &rows,
        timings: None,
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BenchRow {
    seed: u64,
    instance_hash: String,
    size: usize,
    bound: u64,
    root_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<usize>,
}

#[derive(Serialize)]
struct BenchSummary {
    reps: usize,
    mean_size: f64,
    max_size: usize,
    bound: u64,
    /// Mean of size / gamma over instances where the baseline ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    mean_ratio_to_gamma: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn bench(
    echo: Vec<String>,
    model: Model,
    reps: usize,
    seed: u64,
    n: usize,
    k: usize,
    density: f64,
    delta: f64,
    exact_max_n: usize,
    timings: bool,
) -> CliResult<ExitCode> {
    if reps == 0 {
        return Err(CliError::Input("--reps must be at least 1".into()));
    }
    let cfg = config(delta, SolverConfig::default().max_iterations)?;
    let mut rows = Vec::with_capacity(reps);
    let mut solve_time = Duration::ZERO;
    let mut exact_time = Duration::ZERO;
    for rep in 0..reps as u64 {
        let s = seed.wrapping_add(rep);
        let doc = generate(model, n, k, s, density)?;
        let d = doc.to_digraph()?;
        let start = Instant::now();
        let run = solve_detailed(&d, &cfg)?;
        solve_time += start.elapsed();
        let gamma = if n <= exact_max_n {
            let start = Instant::now();
            let r = exact_gamma(&d, run.certificate.size, exact_max_n)?;
            exact_time += start.elapsed();
            Some(r.gamma)
        } else {
            None
        };
        rows.push(BenchRow {
            seed: s,
            instance_hash: sha256_hex(&codec_write(&doc)?),
            size: run.certificate.size,
            bound: run.certificate.bound,
            root_slack: run.tree.root.slack,
            gamma,
        });
    }
    let ratios: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.gamma.map(|g| r.size as f64 / g as f64))
        .collect();
    let summary = BenchSummary {
        reps,
        mean_size: rows.iter().map(|r| r.size as f64).sum::<f64>() / reps as f64,
        max_size: rows.iter().map(|r| r.size).max().unwrap_or(0),
        bound: rows[0].bound,
        mean_ratio_to_gamma: (!ratios.is_empty())
            .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
    };
    eprintln!(
        "{reps} instances: mean size {:.3}, max {}, bound {}",
        summary.mean_size, summary.max_size, summary.bound
    );
    emit(&RunReport {
        command: echo,
        instance_hash: None,
        config: Some(cfg),
        payload: json!({ "model": model, "n": n, "k": k, "density": density, "summary": summary, "runs": rows }),
        timings: timings
            .then(|| json!({ "solve_s": secs(solve_time), "exact_s": secs(exact_time) })),
    })?;
    Ok(ExitCode::SUCCESS)
}
