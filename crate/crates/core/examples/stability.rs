//! Perturbed weak rarefaction on [-60, 140]: prints the decay history.
//!
//! cargo run --release -p relaxwave --example stability [n] [t_end]

use relaxwave::riemann::{build_riemann, EndState};
use relaxwave::solver::{run, Background, Grid1D, Perturbation, SimConfig};
use relaxwave::{GasParams, SmoothWave};

fn main() -> relaxwave::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(4000, |s| s.parse().expect("cell count"));
    let t_end: f64 = args
        .next()
        .map_or(100.0, |s| s.parse().expect("final time"));

    let gas = GasParams::default();
    let data = build_riemann(&gas, EndState::new(1.2, 0.0, 1.0), 1.0)?;
    let wave = SmoothWave::new(gas, data, 1.0, 2.0)?;
    let config = SimConfig {
        gas,
        background: Background::Wave(wave),
        grid: Grid1D::new(-60.0, 140.0, n)?,
        t_end,
        cfl: 0.4,
        perturbation: Perturbation {
            amplitude: 0.01,
            center: 0.0,
            width: 2.0,
            mask: [true, true, true, false, false],
        },
        output_every: 1000,
        sample_times: (1..=4).map(|k| t_end * k as f64 / 4.0).collect(),
        relaxation_split: true,
    };
    let start = std::time::Instant::now();
    let mut records = Vec::new();
    run(config, &mut records)?;
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "linf", "eta", "sup_c", "D_t", "mass_err"
    );
    for r in &records {
        println!(
            "{:8.3} {:12.4e} {:12.4e} {:12.4e} {:12.4e} {:12.4e}",
            r.t,
            r.linf_max(),
            r.eta_total,
            r.sup_centered,
            r.d_t,
            r.mass_balance_error
        );
    }
    if let Some(r) = records.last() {
        println!("linf by component {:?}", r.linf);
    }
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
