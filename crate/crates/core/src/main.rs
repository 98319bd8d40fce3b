use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use automation_race::analysis::wage_growth_curve;
use automation_race::dynamics::{long_run_savings, simulate, Policy};
use automation_race::scenario_runner::check::{run_checks, select};
use automation_race::scenario_runner::output::{emit_csv, fmt17, trajectory_svg};
use automation_race::scenario_runner::{load_config, preset, run, Family, RunResult, ScenarioSpec};
use automation_race::static_economy::{fpf_curve, static_equilibrium};
use automation_race::{Error, Result};

#[derive(Parser)]
#[command(name = "automation-race", version, about = "Task automation economy: equilibria, dynamics, scenarios")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named preset.
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the preset as a config file instead of running it.
        #[arg(long)]
        dump: bool,
    },
    /// Factor price frontier (R, w) at a fixed automated share.
    Fpf {
        #[arg(long)]
        phi: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Static equilibrium at the default economy.
    Static {
        #[arg(long = "K")]
        k: f64,
        #[arg(long)]
        phi: f64,
    },
    /// Vary one config key and summarize each run.
    Sweep {
        #[arg(long)]
        key: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Long-run wage growth against the automation rate, predicted and simulated.
    CurveFig7 {
        #[arg(long, default_value_t = 0.01)]
        from: f64,
        #[arg(long, default_value_t = 0.3)]
        to: f64,
        #[arg(long, default_value_t = 29)]
        steps: usize,
        #[arg(long, default_value_t = 300.0)]
        horizon: f64,
    },
    /// Run the acceptance criteria.
    Check {
        /// Tag or criterion number.
        #[arg(long)]
        only: Option<String>,
        /// Override applied to every preset, `key=value`; repeatable.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

fn summary_line(r: &RunResult) -> String {
    let s = &r.summary;
    let o = |x: Option<f64>| x.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into());
    let mut line = format!(
        "{}: collapse {} reentry {} full_automation {} wage_peak {} g_Y {:.5} g_w {:.5}",
        r.name,
        o(s.collapse_time),
        o(s.reentry_time),
        o(s.full_automation_time),
        o(s.peak_wage_time),
        s.terminal_output_growth,
        s.terminal_wage_growth
    );
    if let Some(reg) = &r.regime {
        line += &format!(" regime {} predicted_g_w {}", reg.regime.name(), reg.asymptotic_wage_growth);
    }
    line
}

fn run_and_emit(spec: &ScenarioSpec, out: Option<&Path>) -> Result<()> {
    let r = run(spec)?;
    println!("{}", summary_line(&r));
    if let Some(dir) = out {
        let path = dir.join(format!("{}.csv", spec.name));
        for p in emit_csv(&r, &path)? {
            println!("wrote {}", p.display());
        }
        if spec.output.svg {
            let svg = dir.join(format!("{}.svg", spec.name));
            fs::write(&svg, trajectory_svg(&r.trajectory, &spec.name))?;
            println!("wrote {}", svg.display());
        }
    }
    Ok(())
}

fn csv_row(v: &[f64]) -> String {
    v.iter().map(|&x| fmt17(x)).collect::<Vec<_>>().join(",")
}

fn sweep(key: &str, from: f64, to: f64, steps: usize, base: ScenarioSpec, out: Option<&Path>) -> Result<()> {
    if steps == 0 {
        return Err(Error::Config("--steps must be at least 1".into()));
    }
    let values: Vec<f64> = (0..=steps).map(|i| from + (to - from) * i as f64 / steps as f64).collect();
    let mut specs = Vec::with_capacity(values.len());
    for &v in &values {
        let mut s = base.clone();
        s.set(key, &fmt17(v))?;
        s.validate()?;
        specs.push(s);
    }
    let results: Vec<Result<RunResult>> = specs.par_iter().map(run).collect();
    let mut text = format!(
        "{key},collapse_time,reentry_time,full_automation_time,peak_wage_time,terminal_output_growth,terminal_wage_growth\n"
    );
    for (v, r) in values.iter().zip(results) {
        let s = r?.summary;
        let nan = |x: Option<f64>| x.unwrap_or(f64::NAN);
        text += &csv_row(&[
            *v,
            nan(s.collapse_time),
            nan(s.reentry_time),
            nan(s.full_automation_time),
            nan(s.peak_wage_time),
            s.terminal_output_growth,
            s.terminal_wage_growth,
        ]);
        text.push('\n');
    }
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let p = dir.join(format!("sweep_{}.csv", key.replace('.', "_")));
            fs::write(&p, text)?;
            println!("wrote {}", p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn curve(from: f64, to: f64, steps: usize, horizon: f64) -> Result<()> {
    let base = preset("business_as_usual")?;
    let grid: Vec<f64> = (0..=steps.max(1)).map(|i| from + (to - from) * i as f64 / steps.max(1) as f64).collect();
    let predicted = wage_growth_curve(&base.economy, &base.preferences, &grid)?;
    let sims: Vec<Result<f64>> = grid
        .par_iter()
        .map(|&lg| {
            let mut s = base.clone();
            s.distribution.family = Family::Pareto;
            s.distribution.lambda_g = lg;
            s.solver.horizon = horizon;
            let (d, p) = s.automation()?;
            let sr = long_run_savings(&s.preferences, s.economy.a)?;
            let t = simulate(&d, &p, &s.economy, &s.preferences, Policy::ConstantSavings(sr), s.k0, &s.solver)?;
            Ok(t.tail_growth(|q| q.w))
        })
        .collect();
    println!("lambda_g,predicted_growth,simulated_growth");
    for ((lg, pred), sim) in predicted.into_iter().zip(sims) {
        println!("{}", csv_row(&[lg, pred, sim?]));
    }
    Ok(())
}

fn parse_sets(set: &[String]) -> Result<Vec<(String, String)>> {
    set.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Config(format!("--set expects key=value, got `{kv}`")))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res: Result<ExitCode> = (|| {
        match cli.cmd {
            Cmd::Run { config, out } => run_and_emit(&load_config(&config)?, out.as_deref())?,
            Cmd::Preset { name, out, dump } => {
                let s = preset(&name)?;
                if dump {
                    print!("{}", s.to_config_string());
                } else {
                    run_and_emit(&s, out.as_deref())?;
                }
            }
            Cmd::Fpf { phi, points } => {
                let p = preset("baseline_agi")?.economy;
                println!("R,w");
                for (r, w) in fpf_curve(&p, phi, points)? {
                    println!("{}", csv_row(&[r, w]));
                }
            }
            Cmd::Static { k, phi } => {
                let p = preset("baseline_agi")?.economy;
                let eq = static_equilibrium(&p, k, phi)?;
                println!("region,Y,w,R,labor_share");
                println!("{},{}", eq.region.code(), csv_row(&[eq.y, eq.w, eq.r, eq.labor_share]));
            }
            Cmd::Sweep { key, from, to, steps, config, preset: name, out } => {
                let base = match (config, name) {
                    (Some(c), _) => load_config(&c)?,
                    (None, Some(n)) => preset(&n)?,
                    (None, None) => preset("business_as_usual")?,
                };
                sweep(&key, from, to, steps, base, out.as_deref())?;
            }
            Cmd::CurveFig7 { from, to, steps, horizon } => curve(from, to, steps, horizon)?,
            Cmd::Check { only, set } => {
                let ids = select(only.as_deref())?;
                let ov = parse_sets(&set)?;
                let results = run_checks(&ids, &ov);
                for r in &results {
                    println!("{r}");
                }
                let failed = results.iter().filter(|r| !r.passed).count();
                println!("{} passed, {} failed", results.len() - failed, failed);
                if failed > 0 {
                    return Ok(ExitCode::from(3));
                }
            }
        }
        Ok(ExitCode::SUCCESS)
    })();
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
