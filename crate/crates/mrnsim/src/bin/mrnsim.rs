//! Command-line front end for the relay-network experiments. All logic
//! lives in the library; this binary parses flags, builds configurations,
//! and dispatches to the experiment runners.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use mrnsim::config::{BetaPolicy, NetworkConfig, Scheme};
use mrnsim::experiments::{antennas, bursty, sir_cdf, tradeoff, verify, OutputFormat, OutputSink};

/// Environment variable naming the default output directory.
const OUT_DIR_ENV: &str = "MRNSIM_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "mrnsim",
    version,
    about = "Monte Carlo simulator for dense multi-antenna relay networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonOpts {
    /// Source-destination pair count L.
    #[arg(long = "L")]
    pairs: Option<usize>,
    /// Antennas per source/destination terminal M.
    #[arg(long = "M")]
    terminal_antennas: Option<usize>,
    /// Antennas per relay terminal N.
    #[arg(long = "N")]
    relay_antennas: Option<usize>,
    /// Network SNR in dB.
    #[arg(long)]
    snr_db: Option<f64>,
    /// Relay scheme: mf | zf | lmmse | direct | cutset.
    #[arg(long)]
    scheme: Option<String>,
    /// Relay-to-source power ratio, or "auto" for the regime optimum.
    #[arg(long)]
    beta: Option<String>,
    /// Duty cycle in (0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Monte Carlo trials per point.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed; re-running with the same seed reproduces outputs
    /// byte-identically.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON config file mirroring the NetworkConfig fields; flags override.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default: $MRNSIM_OUT_DIR or ./mrnsim-out).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output files to write: csv | svg | both.
    #[arg(long, default_value = "csv")]
    format: String,
}

impl CommonOpts {
    fn build_config(&self, defaults: NetworkConfig) -> Result<NetworkConfig, String> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                serde_json::from_str(&text).map_err(|e| format!("bad config file: {e}"))?
            }
            None => defaults,
        };
        if let Some(l) = self.pairs {
            cfg.pairs = l;
        }
        if let Some(m) = self.terminal_antennas {
            cfg.terminal_antennas = m;
        }
        if let Some(n) = self.relay_antennas {
            cfg.relay_antennas = n;
        }
        if let Some(s) = self.snr_db {
            cfg.snr_db = s;
        }
        if let Some(s) = &self.scheme {
            cfg.scheme = Scheme::from_str(s).map_err(|e| e.to_string())?;
        }
        if let Some(b) = &self.beta {
            cfg.beta = if b.eq_ignore_ascii_case("auto") {
                BetaPolicy::Auto
            } else {
                BetaPolicy::Fixed(b.parse().map_err(|e| format!("bad beta: {e}"))?)
            };
        }
        if let Some(a) = self.alpha {
            cfg.alpha = a;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }

    fn sink(&self) -> Result<OutputSink, String> {
        let dir = self
            .out
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("mrnsim-out"));
        let format = OutputFormat::from_str(&self.format).map_err(|e| e.to_string())?;
        Ok(OutputSink::new(dir, format))
    }
}

#[derive(Args, Debug)]
struct GridOpts {
    /// Sweep start, dB.
    #[arg(long, default_value_t = -20.0)]
    snr_start_db: f64,
    /// Sweep stop, dB.
    #[arg(long, default_value_t = 40.0)]
    snr_stop_db: f64,
    /// Sweep step, dB.
    #[arg(long, default_value_t = 2.0)]
    snr_step_db: f64,
}

impl GridOpts {
    fn grid(&self) -> Result<Vec<f64>, String> {
        if !(self.snr_step_db > 0.0 && self.snr_stop_db >= self.snr_start_db) {
            return Err("bad SNR sweep range".into());
        }
        Ok(tradeoff::snr_grid(
            self.snr_start_db,
            self.snr_stop_db,
            self.snr_step_db,
        ))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Empirical per-stream SIR CDFs across relay counts, with the direct
    /// baseline. 10^4 trials by default keep the curves smooth.
    SirCdf {
        /// Relay counts, comma separated.
        #[arg(long = "K", value_delimiter = ',')]
        relays: Option<Vec<usize>>,
        /// Center each CDF on its median (defaults K to 1,64 and drops the
        /// direct baseline).
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Power-bandwidth tradeoff sweep per scheme plus extracted figures.
    Tradeoff {
        /// Relay count K.
        #[arg(long = "K")]
        relays: Option<usize>,
        /// Schemes to sweep, comma separated.
        #[arg(long, value_delimiter = ',')]
        schemes: Option<Vec<String>>,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Bursty-signaling tradeoff curves per duty cycle.
    Bursty {
        #[arg(long = "K")]
        relays: Option<usize>,
        /// Duty cycles, comma separated.
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Rate at which the summary compares Eb/N0.
        #[arg(long, default_value_t = 0.2)]
        c_target: f64,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Antenna scaling curves for (M, N) pairs.
    Antennas {
        #[arg(long = "K")]
        relays: Option<usize>,
        /// Antenna pairs as MxN, comma separated (e.g. 1x2,1x4,2x4).
        #[arg(long, value_delimiter = ',')]
        pairs_mn: Option<Vec<String>>,
        /// Rate at which the summary compares Eb/N0.
        #[arg(long, default_value_t = 4.0)]
        c_target: f64,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the verification battery (all checks or one named check).
    Verify {
        /// Run a single named check.
        #[arg(long)]
        check: Option<String>,
        /// Trial count for the Monte Carlo checks.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// List available checks and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::SirCdf {
            relays,
            normalized,
            common,
        } => {
            let base = common.build_config(NetworkConfig {
                snr_db: 20.0,
                ..NetworkConfig::default()
            })?;
            if !base.scheme.is_relay() {
                return Err("sir-cdf needs a relay scheme (mf, zf, lmmse)".into());
            }
            let mut settings = if normalized {
                sir_cdf::SirCdfSettings::normalized(base)
            } else {
                sir_cdf::SirCdfSettings::new(base)
            };
            if let Some(k) = relays {
                if k.is_empty() {
                    return Err("empty K list".into());
                }
                settings.relay_counts = k;
            }
            let sink = common.sink()?;
            let out = sir_cdf::run(&settings, Some(&sink)).map_err(|e| e.to_string())?;
            for c in &out.curves {
                println!(
                    "{:>8}: median SIR {:7.2} dB, IQR {:5.2} dB",
                    c.label, c.median_db, c.quartile_spread_db
                );
            }
            if let Some(slope) = out.median_slope_db_per_doubling {
                println!("relay median slope: {slope:.2} dB per doubling of K");
            }
            if out.redraws > 0 {
                println!("degenerate redraws: {}", out.redraws);
            }
            report_files(&out.files);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tradeoff {
            relays,
            schemes,
            grid,
            common,
        } => {
            let mut base = common.build_config(NetworkConfig::default())?;
            if let Some(k) = relays {
                base.relays = k;
            }
            let mut settings = tradeoff::TradeoffSettings::new(base);
            settings.snr_db_grid = grid.grid()?;
            if let Some(names) = schemes {
                if names.is_empty() {
                    return Err("empty scheme list".into());
                }
                settings.schemes = names
                    .iter()
                    .map(|s| Scheme::from_str(s).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            let sink = common.sink()?;
            let out = tradeoff::run(&settings, Some(&sink)).map_err(|e| e.to_string())?;
            for c in &out.curves {
                let fig = c
                    .figures
                    .map(|f| {
                        format!(
                            "S0 {:5.2}, S_inf {:5.2}{}",
                            f.s0,
                            f.s_inf,
                            if f.saturated { " (saturated)" } else { "" }
                        )
                    })
                    .unwrap_or_else(|| "figures unavailable".into());
                println!(
                    "{:>7}: {} points, {fig}, redraws {}",
                    c.scheme.to_string(),
                    c.points.len(),
                    c.redraws
                );
            }
            report_files(&out.files);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bursty {
            relays,
            alphas,
            c_target,
            grid,
            common,
        } => {
            let mut base = common.build_config(NetworkConfig::default())?;
            if let Some(k) = relays {
                base.relays = k;
            }
            if !base.scheme.is_relay() {
                return Err("bursty needs a relay scheme (mf, zf, lmmse)".into());
            }
            let mut settings = bursty::BurstySettings::new(base);
            settings.snr_db_grid = grid.grid()?;
            settings.c_target = c_target;
            if let Some(a) = alphas {
                if a.is_empty() {
                    return Err("empty duty-cycle list".into());
                }
                settings.alphas = a;
            }
            let sink = common.sink()?;
            let out = bursty::run(&settings, Some(&sink)).map_err(|e| e.to_string())?;
            for (c, (alpha, e)) in out.curves.iter().zip(&out.ebn0_at_target) {
                let e = e
                    .map(|v| format!("{v:7.2} dB"))
                    .unwrap_or_else(|| "(unreached)".into());
                let warn = if c.warned_points > 0 {
                    format!(" [duty-cycle condition violated at {} points]", c.warned_points)
                } else {
                    String::new()
                };
                println!("alpha {alpha:>5}: Eb/N0 at C={c_target}: {e}{warn}");
            }
            println!(
                "Eb/N0 at C={c_target} strictly decreasing with smaller alpha: {}",
                out.monotone_in_burstiness
            );
            report_files(&out.files);
            Ok(ExitCode::SUCCESS)
        }
        Command::Antennas {
            relays,
            pairs_mn,
            c_target,
            grid,
            common,
        } => {
            let mut base = common.build_config(NetworkConfig {
                scheme: Scheme::Lmmse,
                ..NetworkConfig::default()
            })?;
            if let Some(k) = relays {
                base.relays = k;
            }
            let mut settings = antennas::AntennaSettings::new(base);
            settings.snr_db_grid = grid.grid()?;
            settings.c_target = c_target;
            if let Some(pairs) = pairs_mn {
                if pairs.is_empty() {
                    return Err("empty antenna pair list".into());
                }
                settings.antenna_pairs = pairs
                    .iter()
                    .map(|p| parse_antenna_pair(p))
                    .collect::<Result<Vec<_>, _>>()?;
            }
            let sink = common.sink()?;
            let out = antennas::run(&settings, Some(&sink)).map_err(|e| e.to_string())?;
            for c in &out.curves {
                println!(
                    "M={} N={}: Eb/N0 at C={c_target}: {}, fitted S_inf {}",
                    c.terminal_antennas,
                    c.relay_antennas,
                    c.ebn0_db_at_target
                        .map(|v| format!("{v:.2} dB"))
                        .unwrap_or_else(|| "(unreached)".into()),
                    c.fitted_high_slope
                        .map(|v| format!("{v:.2}"))
                        .unwrap_or_else(|| "n/a".into()),
                );
            }
            report_files(&out.files);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            check,
            trials,
            seed,
            list,
        } => {
            if list {
                for name in verify::check_names() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut settings = verify::VerifySettings {
                check,
                ..verify::VerifySettings::default()
            };
            if let Some(t) = trials {
                settings.trials = t;
            }
            if let Some(s) = seed {
                settings.seed = s;
            }
            let outcomes = verify::run(&settings).map_err(|e| e.to_string())?;
            for o in &outcomes {
                println!("{}", o.line());
            }
            if verify::all_passed(&outcomes) {
                println!("all {} checks passed", outcomes.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn parse_antenna_pair(text: &str) -> Result<(usize, usize), String> {
    let (m, n) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("antenna pair `{text}` is not of the form MxN"))?;
    Ok((
        m.trim().parse().map_err(|e| format!("bad M in `{text}`: {e}"))?,
        n.trim().parse().map_err(|e| format!("bad N in `{text}`: {e}"))?,
    ))
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}
