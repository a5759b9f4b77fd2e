use serde::{Deserialize, Serialize};

use crate::encoding::{EncodingSpec, GeneSpec};
use crate::engine::Problem;
use crate::error::ConfigError;
use crate::tmd::building::BuildingSpec;
use crate::tmd::frf::{FrfCurves, FrfGrid, Structure, Tmd};

/// Gene group tags; the harmony-search δ list is indexed by these.
pub const GROUP_MASS: usize = 0;
pub const GROUP_DAMPING: usize = 1;
pub const GROUP_FREQUENCY: usize = 2;
pub const GROUP_FLOOR: usize = 3;

/// A set of TMDs; floors are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TmdDesign {
    pub omega: Vec<f64>,
    pub xi: Vec<f64>,
    pub mass: Vec<f64>,
    pub floor: Vec<usize>,
}

impl TmdDesign {
    pub fn count(&self) -> usize {
        self.omega.len()
    }

    pub fn none() -> Self {
        Self { omega: vec![], xi: vec![], mass: vec![], floor: vec![] }
    }

    pub fn validate(&self, floors: usize) -> Result<(), ConfigError> {
        let m = self.count();
        if self.xi.len() != m || self.mass.len() != m || self.floor.len() != m {
            return Err(ConfigError::Invalid("TMD design lists must have equal lengths".into()));
        }
        if let Some(&f) = self.floor.iter().find(|&&f| f == 0 || f > floors) {
            return Err(ConfigError::Invalid(format!("TMD floor {f} outside 1..={floors}")));
        }
        if self.mass.iter().chain(&self.xi).chain(&self.omega).any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(ConfigError::Invalid("TMD parameters must be finite and non-negative".into()));
        }
        Ok(())
    }

    /// Genome layout `[ω…, ξ…, m…, floor…]`.
    pub fn encode(&self) -> Vec<f64> {
        self.omega
            .iter()
            .chain(&self.xi)
            .chain(&self.mass)
            .copied()
            .chain(self.floor.iter().map(|&f| f as f64))
            .collect()
    }

    pub fn decode(genome: &[f64]) -> Self {
        let m = genome.len() / 4;
        Self {
            omega: genome[..m].to_vec(),
            xi: genome[m..2 * m].to_vec(),
            mass: genome[2 * m..3 * m].to_vec(),
            floor: genome[3 * m..4 * m].iter().map(|f| f.round().max(1.0) as usize).collect(),
        }
    }

    pub fn tmds(&self) -> Vec<Tmd> {
        (0..self.count())
            .map(|j| Tmd { omega: self.omega[j], xi: self.xi[j], mass: self.mass[j], floor: self.floor[j] - 1 })
            .collect()
    }

    /// Best two-storey design reported for the benchmark building.
    pub fn two_storey_optimum() -> Self {
        Self { omega: vec![22.6586, 14.9481], xi: vec![0.2939, 0.1149], mass: vec![0.0473, 0.0500], floor: vec![2, 2] }
    }

    /// Best four-storey design with free placement.
    pub fn four_storey_optimum() -> Self {
        Self {
            omega: vec![9.8264, 10.5978, 21.3608, 31.8252],
            xi: vec![0.0985, 0.1070, 0.2398, 0.3000],
            mass: vec![0.05; 4],
            floor: vec![4, 4, 4, 1],
        }
    }

    /// Best four-storey design with every TMD on the top floor.
    pub fn four_storey_top_floor() -> Self {
        Self {
            omega: vec![9.8887, 10.3113, 27.8916, 46.8533],
            xi: vec![0.3000, 0.1107, 0.1731, 0.0055],
            mass: vec![0.05; 4],
            floor: vec![4, 4, 4, 4],
        }
    }

    /// Laboratory rig, free placement.
    pub fn rig_optimum() -> Self {
        Self { omega: vec![23.3822, 11.3105], xi: vec![0.2000, 0.1344], mass: vec![0.1, 0.1], floor: vec![1, 2] }
    }

    /// Laboratory rig, both TMDs on the top floor.
    pub fn rig_top_floor() -> Self {
        Self { omega: vec![11.3408, 26.6638], xi: vec![0.1852, 0.0460], mass: vec![0.1, 0.1], floor: vec![2, 2] }
    }
}

/// Search box for each TMD parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TmdBounds {
    pub omega: (f64, f64),
    pub xi: (f64, f64),
    pub mass: (f64, f64),
}

impl Default for TmdBounds {
    fn default() -> Self {
        Self { omega: (0.0, 50.0), xi: (0.0, 0.3), mass: (0.0, 0.05) }
    }
}

/// TMD design-and-placement problem: minimize the peak floor acceleration FRF.
#[derive(Debug, Clone)]
pub struct TmdProblem {
    building: BuildingSpec,
    structure: Structure,
    grid: FrfGrid,
    encoding: EncodingSpec,
}

impl TmdProblem {
    /// `count` TMDs on any floor, or pinned to `fixed_floors` (1-based) when given.
    pub fn new(
        building: BuildingSpec,
        count: usize,
        bounds: TmdBounds,
        grid: FrfGrid,
        fixed_floors: Option<&[usize]>,
    ) -> Result<Self, ConfigError> {
        building.validate()?;
        grid.validate()?;
        if count == 0 {
            return Err(ConfigError::Invalid("at least one TMD is required".into()));
        }
        let n = building.floors() as f64;
        if let Some(f) = fixed_floors {
            if f.len() != count || f.iter().any(|&x| x == 0 || x as f64 > n) {
                return Err(ConfigError::Invalid(format!("fixed floors must be {count} values in 1..={n}")));
            }
        }
        let mut genes = Vec::with_capacity(4 * count);
        let real = |(lo, hi): (f64, f64), group| GeneSpec::real(lo, hi).with_group(group);
        genes.extend((0..count).map(|_| real(bounds.omega, GROUP_FREQUENCY)));
        genes.extend((0..count).map(|_| real(bounds.xi, GROUP_DAMPING)));
        genes.extend((0..count).map(|_| real(bounds.mass, GROUP_MASS)));
        genes.extend((0..count).map(|j| {
            let (lo, hi) = match fixed_floors {
                Some(f) => (f[j] as i64, f[j] as i64),
                None => (1, building.floors() as i64),
            };
            GeneSpec::integer(lo, hi).with_group(GROUP_FLOOR)
        }));
        let encoding = EncodingSpec::new(genes)?;
        Ok(Self { structure: Structure::new(&building), building, grid, encoding })
    }

    pub fn building(&self) -> &BuildingSpec {
        &self.building
    }

    pub fn grid(&self) -> &FrfGrid {
        &self.grid
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Peak response of a design on this problem's grid.
    pub fn fitness(&self, design: &TmdDesign) -> f64 {
        self.structure.peak_response(&design.tmds(), &self.grid)
    }

    pub fn frf(&self, design: &TmdDesign) -> FrfCurves {
        self.structure.frf(&design.tmds(), &self.grid)
    }
}

impl Problem for TmdProblem {
    fn encoding(&self) -> &EncodingSpec {
        &self.encoding
    }

    fn evaluate(&self, genome: &[f64]) -> f64 {
        self.fitness(&TmdDesign::decode(genome))
    }
}

/// Peak response of `design` on `building` over `grid`.
pub fn fitness_g(building: &BuildingSpec, design: &TmdDesign, grid: &FrfGrid) -> f64 {
    Structure::new(building).peak_response(&design.tmds(), grid)
}
