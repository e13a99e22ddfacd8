//! The scenario catalog and dispatch.

mod continuum;
mod inverse;
mod oscillator;
mod quantum;

use crate::{CliError, Params, Result, RunOutput};

pub struct Scenario {
    pub name: &'static str,
    pub doc: &'static str,
    /// whether a run draws random numbers (and therefore demands a seed)
    pub stochastic: bool,
    run: fn(&mut Params) -> Result<RunOutput>,
}

/// All scenarios, in stable alphabetical order.
pub fn catalog() -> &'static [Scenario] {
    &[
        Scenario {
            name: "chsh",
            doc: "CHSH combinations: classical/quantum bounds and the singlet optimum",
            stochastic: true,
            run: inverse::chsh,
        },
        Scenario {
            name: "clock",
            doc: "periodic clock pointer: expectation values and precession",
            stochastic: false,
            run: continuum::clock,
        },
        Scenario {
            name: "completeness",
            doc: "solve classical distributions for random target density matrices",
            stochastic: true,
            run: inverse::completeness,
        },
        Scenario {
            name: "decoherence",
            doc: "two-qubit evolution with purity loss and revival of the subsystem",
            stochastic: false,
            run: quantum::decoherence,
        },
        Scenario {
            name: "gates",
            doc: "apply a catalog gate sequence to a Bloch state",
            stochastic: false,
            run: quantum::gates,
        },
        Scenario {
            name: "ghz",
            doc: "attempt the GHZ state under the minimal three-qubit map",
            stochastic: true,
            run: inverse::ghz,
        },
        Scenario {
            name: "kochen-specker",
            doc: "three-qubit operator chains and their sign contradiction",
            stochastic: false,
            run: quantum::kochen_specker,
        },
        Scenario {
            name: "learner",
            doc: "train the bottleneck network on a two-qubit gate",
            stochastic: true,
            run: inverse::learner,
        },
        Scenario {
            name: "oscillator",
            doc: "Liouville evolution of a phase-space mode pair",
            stochastic: false,
            run: oscillator::oscillator,
        },
        Scenario {
            name: "qubit-chain",
            doc: "automaton updatings against unitary conjugation on mapped states",
            stochastic: true,
            run: inverse::qubit_chain,
        },
        Scenario {
            name: "sphere",
            doc: "direction spins on the sphere: quadrature and Monte Carlo",
            stochastic: true,
            run: continuum::sphere,
        },
        Scenario {
            name: "stern-gerlach",
            doc: "three-step spin sequence, coherent versus decoherent",
            stochastic: false,
            run: quantum::stern_gerlach,
        },
    ]
}

pub fn find(name: &str) -> Result<&'static Scenario> {
    catalog()
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::Config(format!("unknown scenario '{name}'")))
}

/// Run one scenario; rejects config keys the scenario did not consume.
pub fn run_scenario(name: &str, params: &mut Params) -> Result<RunOutput> {
    let scenario = find(name)?;
    let output = (scenario.run)(params)?;
    params.finish()?;
    Ok(output)
}
