//! Per-iteration run instrumentation: best-fitness evolution, which substrate
//! produced each iteration's best larva, and how many larvae each substrate
//! got into the reef.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::DataError;

/// Pseudo-substrate name for brooded larvae.
pub const BROODING: &str = "brooding";
pub const RNG_NAME: &str = "ChaCha8Rng";
pub const CSV_DIGITS: usize = 9;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstrateCounts {
    pub produced: u64,
    pub settled: u64,
    pub best: bool,
}

impl SubstrateCounts {
    pub fn rejected(&self) -> u64 {
        self.produced - self.settled
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub best_fitness: f64,
    /// One entry per substrate, brooding last.
    pub counts: Vec<SubstrateCounts>,
}

/// One larva's fate within an iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LarvaEvent {
    /// Substrate index; `substrate_count` marks a brooded larva.
    pub origin: usize,
    pub fitness: f64,
    pub settled: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub seed: u64,
    pub rng: String,
    pub params_digest: String,
    pub evaluations: u64,
    /// Iterations at whose end the reef was regenerated.
    pub regenerations: Vec<usize>,
    pub budding_attempts: u64,
    pub budding_settled: u64,
    pub depredated: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTelemetry {
    /// Substrate column names, brooding last.
    pub names: Vec<String>,
    pub records: Vec<IterationRecord>,
    pub meta: RunMeta,
}

impl RunTelemetry {
    pub fn new(substrate_names: &[String], meta: RunMeta) -> Self {
        let mut names = substrate_names.to_vec();
        names.push(BROODING.to_string());
        Self { names, records: Vec::new(), meta }
    }

    pub fn substrate_count(&self) -> usize {
        self.names.len() - 1
    }

    /// Append one iteration. The best-larva flag goes to the substrate (never
    /// brooding) whose larva had the lowest cost; ties go to the lower index.
    pub fn record_iteration(&mut self, iteration: usize, best_fitness: f64, events: &[LarvaEvent]) {
        let mut counts = vec![SubstrateCounts::default(); self.names.len()];
        let brooding = self.substrate_count();
        let mut best: Option<(f64, usize)> = None;
        for e in events {
            let c = &mut counts[e.origin.min(brooding)];
            c.produced += 1;
            c.settled += u64::from(e.settled);
            if e.origin < brooding {
                let better = match best {
                    None => true,
                    Some((f, o)) => e.fitness < f || (e.fitness == f && e.origin < o),
                };
                if better {
                    best = Some((e.fitness, e.origin));
                }
            }
        }
        if let Some((_, o)) = best {
            counts[o].best = true;
        }
        self.records.push(IterationRecord { iteration, best_fitness, counts });
    }

    pub fn csv_header(&self) -> String {
        let mut cols = vec!["iteration".to_string(), "best_fitness".to_string()];
        for n in &self.names {
            cols.push(format!("produced_{n}"));
            cols.push(format!("settled_{n}"));
            cols.push(format!("best_{n}"));
        }
        cols.join(",")
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.iteration.to_string());
            out.push(',');
            out.push_str(&format_sig(r.best_fitness, CSV_DIGITS));
            for c in &r.counts {
                out.push_str(&format!(",{},{},{}", c.produced, c.settled, u8::from(c.best)));
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), DataError> {
        let io = |source| DataError::Io { path: path.to_path_buf(), source };
        let mut w = BufWriter::new(File::create(path).map_err(io)?);
        w.write_all(self.to_csv_string().as_bytes()).map_err(io)?;
        w.flush().map_err(io)
    }

    /// Parse records and substrate names back from [`Self::to_csv_string`] output.
    pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<IterationRecord>), DataError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| DataError::Invalid("empty telemetry CSV".into()))?;
        let cols: Vec<&str> = header.split(',').collect();
        if cols.len() < 2 || cols[0] != "iteration" || cols[1] != "best_fitness" || (cols.len() - 2) % 3 != 0 {
            return Err(DataError::Invalid(format!("unexpected telemetry header: {header}")));
        }
        let names: Vec<String> =
            cols[2..].chunks(3).map(|c| c[0].trim_start_matches("produced_").to_string()).collect();
        let bad = |row: usize, what: &str| DataError::Invalid(format!("telemetry row {row}: bad {what}"));
        let mut records = Vec::new();
        for (row, line) in lines.enumerate() {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != cols.len() {
                return Err(bad(row + 1, "column count"));
            }
            let iteration = f[0].parse().map_err(|_| bad(row + 1, "iteration"))?;
            let best_fitness = f[1].parse().map_err(|_| bad(row + 1, "best_fitness"))?;
            let mut counts = Vec::with_capacity(names.len());
            for c in f[2..].chunks(3) {
                counts.push(SubstrateCounts {
                    produced: c[0].parse().map_err(|_| bad(row + 1, "produced"))?,
                    settled: c[1].parse().map_err(|_| bad(row + 1, "settled"))?,
                    best: c[2] == "1",
                });
            }
            records.push(IterationRecord { iteration, best_fitness, counts });
        }
        Ok((names, records))
    }

    /// Trailing moving-window share (percent) of flagged iterations won by each
    /// substrate. Iterations without any substrate larva are left out of the
    /// denominator. Brooding is not a column.
    pub fn best_larva_ratio(&self, window: usize) -> Vec<Vec<f64>> {
        let t = self.substrate_count();
        let window = window.max(1);
        let winners: Vec<Option<usize>> =
            self.records.iter().map(|r| r.counts[..t].iter().position(|c| c.best)).collect();
        let mut series = vec![Vec::with_capacity(winners.len()); t];
        let mut tally = vec![0usize; t];
        let mut flagged = 0usize;
        for i in 0..winners.len() {
            if let Some(s) = winners[i] {
                tally[s] += 1;
                flagged += 1;
            }
            if i >= window {
                if let Some(s) = winners[i - window] {
                    tally[s] -= 1;
                    flagged -= 1;
                }
            }
            for s in 0..t {
                series[s].push(if flagged == 0 { 0.0 } else { 100.0 * tally[s] as f64 / flagged as f64 });
            }
        }
        series
    }
}

/// Like C's `%.{digits}g`: shortest of fixed or scientific notation, trailing zeros trimmed.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("S{i}")).collect()
    }

    fn ev(origin: usize, fitness: f64, settled: bool) -> LarvaEvent {
        LarvaEvent { origin, fitness, settled }
    }

    #[test]
    fn empty_iteration_has_no_flag() {
        let mut t = RunTelemetry::new(&names(2), RunMeta::default());
        t.record_iteration(0, 1.0, &[]);
        assert!(t.records[0].counts.iter().all(|c| *c == SubstrateCounts::default()));
    }

    #[test]
    fn ties_go_to_lower_index_and_brooding_never_wins() {
        let mut t = RunTelemetry::new(&names(3), RunMeta::default());
        t.record_iteration(0, 1.0, &[ev(2, 0.5, true), ev(1, 0.5, false), ev(3, 0.1, true)]);
        let c = &t.records[0].counts;
        assert!(c[1].best && !c[2].best && !c[3].best);
        assert_eq!(c[3].produced, 1);
        assert_eq!(c[2].settled, 1);
        assert_eq!(c[1].rejected(), 1);
    }

    #[test]
    fn format_matches_c_g() {
        assert_eq!(format_sig(8.434812345678, 9), "8.43481235");
        assert_eq!(format_sig(137.58086153846153, 9), "137.580862");
        assert_eq!(format_sig(1e-7, 9), "1e-07");
        assert_eq!(format_sig(-2.5e12, 9), "-2.5e+12");
        assert_eq!(format_sig(999999999.6, 9), "1e+09");
        assert_eq!(format_sig(0.0001, 9), "0.0001");
        assert_eq!(format_sig(3.0, 9), "3");
        assert_eq!(format_sig(0.0, 9), "0");
    }

    #[test]
    fn header_only_for_empty_run() {
        let t = RunTelemetry::new(&names(1), RunMeta::default());
        assert_eq!(
            t.to_csv_string(),
            "iteration,best_fitness,produced_S0,settled_S0,best_S0,produced_brooding,settled_brooding,best_brooding\n"
        );
    }

    #[test]
    fn golden_three_iteration_file() {
        let mut t = RunTelemetry::new(&["HS".to_string(), "DE".to_string()], RunMeta::default());
        t.record_iteration(0, 10.5, &[ev(0, 9.0, true), ev(1, 8.0, true), ev(2, 7.0, false)]);
        t.record_iteration(1, 8.0, &[ev(0, 12.0, false), ev(0, 11.0, true)]);
        t.record_iteration(2, 1.0 / 3.0, &[]);
        let golden = "\
iteration,best_fitness,produced_HS,settled_HS,best_HS,produced_DE,settled_DE,best_DE,produced_brooding,settled_brooding,best_brooding
0,10.5,1,1,0,1,1,1,1,0,0
1,8,2,1,1,0,0,0,0,0,0
2,0.333333333,0,0,0,0,0,0,0,0,0
";
        assert_eq!(t.to_csv_string(), golden);
    }

    #[test]
    fn ratio_single_substrate_and_alternation() {
        let mut t = RunTelemetry::new(&names(1), RunMeta::default());
        for i in 0..5 {
            t.record_iteration(i, 1.0, &[ev(0, 1.0, false)]);
        }
        assert!(t.best_larva_ratio(50)[0].iter().all(|&p| p == 100.0));

        let mut t = RunTelemetry::new(&names(2), RunMeta::default());
        for i in 0..6 {
            t.record_iteration(i, 1.0, &[ev(i % 2, 1.0, false)]);
        }
        let r = t.best_larva_ratio(2);
        for i in 1..6 {
            assert_eq!((r[0][i], r[1][i]), (50.0, 50.0));
        }
    }
}
