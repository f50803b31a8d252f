use mrnsim::config::{BetaPolicy, NetworkConfig, Scheme};
use mrnsim::link::sir_samples;
use mrnsim::stats;

fn main() {
    for beta in [0.5, 1.0, 1.4, 2.0, 2.83, 4.0, 5.66, 8.0] {
        let cfg = NetworkConfig {
            relays: 1,
            pairs: 2,
            terminal_antennas: 1,
            relay_antennas: 2,
            snr_db: 20.0,
            scheme: Scheme::Zf,
            beta: BetaPolicy::Fixed(beta),
            trials: 10_000,
            seed: 42,
            ..NetworkConfig::default()
        };
        let run = sir_samples(&cfg).unwrap();
        let mut db: Vec<f64> = run
            .samples
            .iter()
            .flat_map(|s| s.per_stream.iter().map(|&v| stats::db_from_linear(v)))
            .collect();
        stats::sort_ascending(&mut db);
        println!("beta {beta:5}: K=1 median {:.3} dB", stats::median_sorted(&db));
    }
}
