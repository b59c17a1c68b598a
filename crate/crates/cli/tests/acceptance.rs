//! Acceptance run: one pass/fail line per criterion, with the tolerances and
//! runtime limits pinned here rather than taken from the suite defaults.
//!
//! A criterion listed in `KNOWN_FAILURES` is still run and reported as FAIL; it does
//! not fail the test process. Any other failure does.

use std::process::{Command, ExitCode};

use ellsix::config::Config;
use ellsix::report::SuiteRecord;
use ellsix::{run_suite, suites};

struct Criterion {
    number: u32,
    title: &'static str,
    /// Suite id and its pinned tolerance.
    parts: &'static [(&'static str, f64)],
    /// Wall-time limit in seconds over all parts.
    time_limit: Option<f64>,
}

/// Suites whose failure is documented (README, "Known deviations").
const KNOWN_FAILURES: &[&str] = &["g_alt_ratio"];

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "theta kernel, 1000 samples",
        parts: &[("theta_kernel", 1e-11)],
        time_limit: Some(1.0),
    },
    Criterion {
        number: 2,
        title: "domain-wall partition function vs weight function, n = 1..4",
        parts: &[("domain_wall", 1e-8)],
        time_limit: Some(10.0),
    },
    Criterion {
        number: 3,
        title: "lattice splitting, coincident deltas, crossing, square lattice",
        parts: &[
            ("lattice_splitting", 1e-9),
            ("lattice_delta", 1e-9),
            ("lattice_crossing", 1e-9),
            ("lattice_square", 1e-9),
        ],
        time_limit: None,
    },
    Criterion {
        number: 4,
        title: "weight function symmetries, factorizations, decompositions",
        parts: &[
            ("phi_symmetry", 1e-10),
            ("phi_geometric", 1e-10),
            ("phi_decomposition", 1e-10),
        ],
        time_limit: None,
    },
    Criterion {
        number: 5,
        title: "6j four-way agreement (M, N <= 2) and formula agreement at M = N = 3",
        parts: &[("sixj_agreement", 1e-7), ("sixj_formulas_3", 1e-7)],
        time_limit: None,
    },
    Criterion {
        number: 6,
        title: "dynamical Yang-Baxter relation and unitarity",
        parts: &[("qdyb", 1e-7), ("unitarity", 1e-8)],
        time_limit: None,
    },
    Criterion {
        number: 7,
        title: "6j symmetries, V-empty closed form and summation",
        parts: &[
            ("sixj_symmetry", 1e-8),
            ("vempty_closed_form", 1e-8),
            ("vempty_summation", 1e-8),
        ],
        time_limit: None,
    },
    Criterion {
        number: 8,
        title: "series summations and transformations",
        parts: &[
            ("ft_jackson", 1e-9),
            ("bailey", 1e-9),
            ("jackson_multi", 1e-9),
            ("jackson_box", 1e-9),
            ("composition_transform", 1e-9),
            ("rank_exchange", 1e-8),
        ],
        time_limit: Some(30.0),
    },
    Criterion {
        number: 9,
        title: "specialized 6j-symbols as V series",
        parts: &[("specialization", 1e-8)],
        time_limit: None,
    },
    Criterion {
        number: 10,
        title: "biorthogonality, matrix inversion, alternative g form, inversion route",
        parts: &[
            ("biortho", 1e-8),
            ("inversion", 1e-9),
            ("g_alt_ratio", 1e-8),
            ("cs_route", 1e-8),
        ],
        time_limit: None,
    },
];

fn fmt_residual(r: &SuiteRecord) -> String {
    match (&r.error, r.max_residual) {
        (Some(e), _) => format!("error: {e}"),
        (None, Some(m)) => format!("{m:.2e}"),
        (None, None) => "-".into(),
    }
}

fn reproducibility() -> Result<String, String> {
    let dir = std::env::temp_dir().join(format!("ellsix-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let suites = [
        "theta_kernel",
        "domain_wall",
        "bailey",
        "specialization",
        "biortho",
    ];
    let run = |tag: &str, threads: &str| -> Result<(String, Vec<u8>), String> {
        let json = dir.join(format!("{tag}.json"));
        let csv = dir.join(format!("{tag}.csv"));
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ellsix"));
        cmd.args(["verify", "--seed", "20261016", "--threads", threads]);
        for s in suites {
            cmd.args(["--suite", s]);
        }
        cmd.arg("--json").arg(&json).arg("--csv").arg(&csv);
        let out = cmd.output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(0) {
            return Err(format!("run {tag} exited with {:?}", out.status.code()));
        }
        let text = std::fs::read_to_string(&json).map_err(|e| e.to_string())?;
        let residual_fields: String = text
            .lines()
            .filter(|l| !l.contains("\"wall_time_ms\""))
            .collect::<Vec<_>>()
            .join("\n");
        Ok((
            residual_fields,
            std::fs::read(&csv).map_err(|e| e.to_string())?,
        ))
    };
    let a = run("a", "1")?;
    let b = run("b", "1")?;
    let c = run("c", "4")?;
    let _ = std::fs::remove_dir_all(&dir);
    if a != b {
        return Err("two runs with one thread differ".into());
    }
    if a != c {
        return Err("one thread and four threads differ".into());
    }
    Ok(format!(
        "{} suites, JSON and CSV byte-identical across runs and 1 vs 4 threads",
        suites.len()
    ))
}

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for c in CRITERIA {
        let mut config = Config::default();
        for &(id, tol) in c.parts {
            config.tolerance.insert(id.to_string(), tol);
        }
        let mut details = Vec::new();
        let mut pass = true;
        let mut seconds = 0.0;
        let mut known = Vec::new();
        for &(id, tol) in c.parts {
            let suite = suites::find(id).expect("suite exists");
            let r = run_suite(&config, suite);
            seconds += r.wall_time_ms / 1000.0;
            details.push(format!(
                "{id} {} {} tol {tol:.0e}",
                if r.pass { "ok" } else { "FAIL" },
                fmt_residual(&r)
            ));
            if !r.pass {
                pass = false;
                if KNOWN_FAILURES.contains(&id) {
                    known.push(id);
                } else {
                    unexpected.push(format!("criterion {}: {id}", c.number));
                }
            }
        }
        if let Some(limit) = c.time_limit {
            let ok = seconds < limit;
            details.push(format!("time {seconds:.2} s (limit {limit} s)"));
            if !ok {
                pass = false;
                unexpected.push(format!("criterion {}: runtime", c.number));
            }
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        let note = if known.is_empty() {
            String::new()
        } else {
            format!(" [known deviation: {}]", known.join(", "))
        };
        println!(
            "criterion {:>2} {verdict}: {}{note} | {}",
            c.number,
            c.title,
            details.join("; ")
        );
    }
    match reproducibility() {
        Ok(msg) => println!("criterion 11 PASS: CLI reproducibility | {msg}"),
        Err(msg) => {
            println!("criterion 11 FAIL: CLI reproducibility | {msg}");
            unexpected.push("criterion 11".into());
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
