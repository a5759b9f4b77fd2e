use crate::bsop::battery::{deterministic_schedule, simulate_soc_repair};
use crate::bsop::scenario::{MicroGridScenario, HORIZON};
use crate::bsop::tariff::{billing, Bill};
use crate::encoding::{EncodingSpec, GeneSpec};
use crate::engine::Problem;
use crate::error::ConfigError;

/// Weekly battery schedule minimizing the electricity bill.
#[derive(Debug, Clone)]
pub struct BsopProblem {
    scenario: MicroGridScenario,
    net_load: Vec<f64>,
    encoding: EncodingSpec,
}

impl BsopProblem {
    pub fn new(scenario: MicroGridScenario) -> Result<Self, ConfigError> {
        scenario.validate()?;
        let b = &scenario.battery;
        let gene = GeneSpec::real(-b.p_max_discharge_kw, b.p_max_charge_kw);
        let encoding = EncodingSpec::new(vec![gene; HORIZON])?;
        Ok(Self { net_load: scenario.net_load(), scenario, encoding })
    }

    pub fn scenario(&self) -> &MicroGridScenario {
        &self.scenario
    }

    /// Bill for a schedule after SOC repair.
    pub fn bill(&self, schedule: &[f64]) -> Bill {
        let mut b = schedule.to_vec();
        simulate_soc_repair(&mut b, &self.scenario.battery);
        let p: Vec<f64> = self.net_load.iter().zip(&b).map(|(n, b)| n + b).collect();
        billing(&p, &self.scenario.tariff)
    }

    pub fn no_battery(&self) -> Bill {
        billing(&self.net_load, &self.scenario.tariff)
    }

    pub fn deterministic(&self) -> Vec<f64> {
        deterministic_schedule(&self.net_load, &self.scenario.battery)
    }
}

impl Problem for BsopProblem {
    fn encoding(&self) -> &EncodingSpec {
        &self.encoding
    }

    fn evaluate(&self, genome: &[f64]) -> f64 {
        self.bill(genome).total
    }

    fn repair(&self, genome: &mut [f64]) {
        simulate_soc_repair(genome, &self.scenario.battery);
    }

    fn seed_solutions(&self) -> Vec<Vec<f64>> {
        vec![self.deterministic()]
    }
}
