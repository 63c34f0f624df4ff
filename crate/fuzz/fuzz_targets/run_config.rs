#![no_main]

use holonomy_cli::config::GridSpec;
use holonomy_cli::RunConfig;
use libfuzzer_sys::fuzz_target;

fn len(g: &GridSpec) -> usize {
    match g {
        GridSpec::Values(v) => v.len(),
        GridSpec::Range { count, .. } => *count,
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(config) = RunConfig::parse_bytes(data) else { return };
    if let Some(sweep) = &config.sweep {
        assert!(sweep.steps >= 2);
        // Valid configs may ask for huge grids; only expand small ones.
        for g in [&sweep.alphas, &sweep.betas] {
            if len(g) <= 4096 {
                let pts = g.points();
                assert_eq!(pts.len(), len(g));
                assert!(pts.windows(2).all(|w| w[1] > w[0]));
            }
        }
    }
    if let Some(d) = &config.dynamics {
        assert!(d.omega0_tau.windows(2).all(|w| w[1] > w[0]));
        assert!(d.steps_per_unit > 0.0);
    }
});
