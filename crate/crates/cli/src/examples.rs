//! The bundled example systems and their expected verdicts. The same
//! files ship under `crates/cli/data/` for direct use with `check` and
//! `term-order`.

use qmstab_core::{
    stability_verdict, term_order_total_stability, verify_certificate, SearchConfig,
    StabilityStatus, TermOrder, ZVector,
};

use crate::report::ExampleRun;
use crate::system_file::{build_system, parse_system_file};

pub enum Method {
    Z(&'static [&'static [i64]]),
    Order(&'static str),
}

pub struct BundledExample {
    pub name: &'static str,
    pub source: &'static str,
    pub method: Method,
    pub expected: StabilityStatus,
}

pub const BUNDLED: [BundledExample; 6] = [
    BundledExample {
        name: "parabola-strip",
        source: include_str!("../data/parabola-strip.qm"),
        method: Method::Z(&[&[1, 2]]),
        expected: StabilityStatus::Stable,
    },
    BundledExample {
        name: "cross-cylinders",
        source: include_str!("../data/cross-cylinders.qm"),
        method: Method::Z(&[&[1, 0], &[0, 1]]),
        expected: StabilityStatus::Stable,
    },
    BundledExample {
        name: "half-cylinder-hyperbola",
        source: include_str!("../data/half-cylinder-hyperbola.qm"),
        method: Method::Z(&[&[0, 1], &[1, -1]]),
        expected: StabilityStatus::Stable,
    },
    BundledExample {
        name: "narrow-tentacles",
        source: include_str!("../data/narrow-tentacles.qm"),
        method: Method::Z(&[&[-1, 2], &[1, -1]]),
        expected: StabilityStatus::Stable,
    },
    BundledExample {
        name: "quadrant-hyperbola",
        source: include_str!("../data/quadrant-hyperbola.qm"),
        method: Method::Order("deglex:x,y"),
        expected: StabilityStatus::Stable,
    },
    BundledExample {
        name: "compact-hyperbola-patch",
        source: include_str!("../data/compact-hyperbola-patch.qm"),
        method: Method::Order("deglex:x,y"),
        expected: StabilityStatus::Stable,
    },
];

/// Runs every bundled system and compares against the expected
/// verdict. Every emitted stable certificate is re-verified before the
/// run is reported as a match.
pub fn run_bundled(cfg: &SearchConfig) -> Result<Vec<ExampleRun>, String> {
    let mut runs = Vec::with_capacity(BUNDLED.len());
    for example in &BUNDLED {
        let file = parse_system_file(example.source)
            .map_err(|e| format!("{}: {}", example.name, e))?;
        let sys = build_system(&file).map_err(|e| format!("{}: {}", example.name, e))?;
        let (verdict, method) = match &example.method {
            Method::Z(dirs) => {
                let zs: Vec<ZVector> = dirs
                    .iter()
                    .map(|d| ZVector::new(d.to_vec()).expect("bundled directions are nonzero"))
                    .collect();
                let method = format!(
                    "z: {}",
                    zs.iter().map(|z| z.to_string()).collect::<Vec<_>>().join("; ")
                );
                let verdict = stability_verdict(&sys, &zs, cfg)
                    .map_err(|e| format!("{}: {}", example.name, e))?;
                (verdict, method)
            }
            Method::Order(spec) => {
                let ord = TermOrder::parse_spec(spec, sys.ctx())
                    .map_err(|e| format!("{}: {}", example.name, e))?;
                (
                    term_order_total_stability(&sys, &ord),
                    format!("order: {spec}"),
                )
            }
        };
        let certified = verdict.status != StabilityStatus::Stable
            || verify_certificate(&verdict, &sys)
                .map_err(|e| format!("{}: {}", example.name, e))?;
        runs.push(ExampleRun {
            name: example.name.to_string(),
            method,
            expected: example.expected,
            status: verdict.status,
            matched: verdict.status == example.expected && certified,
        });
    }
    Ok(runs)
}
