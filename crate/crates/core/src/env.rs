//! Bernoulli slot machines.
//!
//! Every machine pays the same unit reward; machine `i` pays with probability
//! `P_i`. Reward draws come from their own seeded stream so the environment
//! noise is independent of the decision signal.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arm counts with a reference arrangement.
pub const CANONICAL_ARMS: [usize; 6] = [2, 4, 8, 16, 32, 64];

/// Reward probabilities and the machine a perfect player would pick.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BanditProblem {
    probabilities: Vec<f64>,
    best_machine: usize,
    seed: u64,
}

impl BanditProblem {
    /// Ties for the maximum resolve to the lowest index.
    pub fn new(probabilities: Vec<f64>, seed: u64) -> Result<Self> {
        let n = probabilities.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidProblem(format!(
                "machine count must be a power of two ≥ 2, got {n}"
            )));
        }
        if let Some(p) = probabilities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidProblem(format!(
                "reward probability {p} lies outside [0, 1]"
            )));
        }
        let best_machine = probabilities.iter().enumerate().fold(0, |best, (i, &p)| {
            if p > probabilities[best] {
                i
            } else {
                best
            }
        });
        Ok(Self {
            probabilities,
            best_machine,
            seed,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn arms(&self) -> usize {
        self.probabilities.len()
    }

    pub fn depth(&self) -> usize {
        self.arms().trailing_zeros() as usize
    }

    pub fn best_machine(&self) -> usize {
        self.best_machine
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `true` when the maximum is attained by more than one machine.
    pub fn has_tied_best(&self) -> bool {
        let best = self.probabilities[self.best_machine];
        self.probabilities.iter().filter(|&&p| p == best).count() > 1
    }

    /// A reward stream on this problem's own seed.
    pub fn environment(&self) -> Environment<'_> {
        self.environment_for_stream(0)
    }

    /// Independent reward stream number `stream` (e.g. one per repetition).
    pub fn environment_for_stream(&self, stream: u64) -> Environment<'_> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        Environment {
            problem: self,
            rng,
            draws: 0,
        }
    }
}

/// A problem paired with its deterministic reward stream.
#[derive(Debug, Clone)]
pub struct Environment<'a> {
    problem: &'a BanditProblem,
    rng: ChaCha8Rng,
    draws: u64,
}

impl Environment<'_> {
    /// One Bernoulli draw with parameter `P_machine`.
    pub fn play(&mut self, machine: usize) -> Result<bool> {
        let arms = self.problem.arms();
        let p = *self
            .problem
            .probabilities
            .get(machine)
            .ok_or(Error::MachineOutOfRange { machine, arms })?;
        self.draws += 1;
        let u: f64 = self.rng.random();
        Ok(u < p)
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn problem(&self) -> &BanditProblem {
        self.problem
    }
}

/// The reference arrangement for `n` arms: 0.9 vs 0.7 for two arms; otherwise
/// 0.7, 0.5, 0.9, 0.1 followed by alternating 0.7 / 0.5, with the best machine
/// at index 2.
pub fn canonical_problem(n: usize) -> Result<BanditProblem> {
    if !CANONICAL_ARMS.contains(&n) {
        return Err(Error::InvalidProblem(format!(
            "no canonical arrangement for {n} arms (supported: {CANONICAL_ARMS:?})"
        )));
    }
    let probabilities = if n == 2 {
        vec![0.9, 0.7]
    } else {
        let mut p = vec![0.7, 0.5, 0.9, 0.1];
        p.extend((4..n).map(|i| if i % 2 == 0 { 0.7 } else { 0.5 }));
        p
    };
    BanditProblem::new(probabilities, 0)
}

/// The four-armed arrangements with best machines 2, 0, 1, 3 for types 1–4.
pub fn type_problem(t: u8) -> Result<BanditProblem> {
    let probabilities = match t {
        1 => vec![0.7, 0.5, 0.9, 0.1],
        2 => vec![0.9, 0.1, 0.7, 0.5],
        3 => vec![0.7, 0.9, 0.5, 0.1],
        4 => vec![0.7, 0.5, 0.1, 0.9],
        _ => {
            return Err(Error::InvalidProblem(format!(
                "problem type must be 1..=4, got {t}"
            )))
        }
    };
    BanditProblem::new(probabilities, 0)
}

/// Two-armed problem `(0.9, p1)`.
pub fn two_armed(p1: f64) -> Result<BanditProblem> {
    BanditProblem::new(vec![0.9, p1], 0)
}

/// One bit level of [`check_contradiction`]: the split of the prefix group
/// that contains the best machine.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    /// 1-based bit level.
    pub level: usize,
    /// Bits of the best machine above this level, MSB first.
    pub prefix: String,
    /// Summed reward probability of the branch whose bit at this level is 0.
    pub sum_zero: f64,
    pub sum_one: f64,
    /// The best machine's bit at this level.
    pub best_side: u8,
    /// The best machine sits in the branch with the strictly smaller sum.
    pub contradictory: bool,
}

/// For each bit level, compare the two halves of the prefix group holding the
/// best machine.
pub fn check_contradiction(problem: &BanditProblem) -> Vec<LevelReport> {
    let depth = problem.depth();
    let best = problem.best_machine();
    let p = problem.probabilities();
    (1..=depth)
        .map(|level| {
            let group = 1usize << (depth - level + 1);
            let start = (best / group) * group;
            let half = group / 2;
            let sum = |range: std::ops::Range<usize>| p[range].iter().sum::<f64>();
            let sum_zero = sum(start..start + half);
            let sum_one = sum(start + half..start + group);
            let best_side = u8::from(best >= start + half);
            let (mine, other) = if best_side == 0 {
                (sum_zero, sum_one)
            } else {
                (sum_one, sum_zero)
            };
            let prefix = (0..level - 1)
                .map(|j| {
                    if (best >> (depth - 1 - j)) & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            LevelReport {
                level,
                prefix,
                sum_zero,
                sum_one,
                best_side,
                // Tolerance absorbs float noise in sums like 0.7 + 0.5.
                contradictory: mine < other - 1e-9,
            }
        })
        .collect()
}

/// How a problem is named on the command line or in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum ProblemSpec {
    Canonical(usize),
    Type(u8),
    TwoArmed(f64),
    /// Explicit reward probabilities, reward seed 0.
    Probabilities(Vec<f64>),
    File(PathBuf),
}

impl ProblemSpec {
    pub fn resolve(&self) -> Result<BanditProblem> {
        match self {
            Self::Canonical(n) => canonical_problem(*n),
            Self::Type(t) => type_problem(*t),
            Self::TwoArmed(p1) => two_armed(*p1),
            Self::Probabilities(p) => BanditProblem::new(p.clone(), 0),
            Self::File(path) => load_problem(path),
        }
    }
}

impl FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidProblem(format!(
                "expected canonical:<N>, type:<1-4>, two-armed:<P1>, probs:<P0,P1,...> or file:<path>, got {s:?}"
            ))
        };
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "canonical" => arg.parse().map(Self::Canonical).map_err(|_| bad()),
            "type" => arg.parse().map(Self::Type).map_err(|_| bad()),
            "two-armed" => arg.parse().map(Self::TwoArmed).map_err(|_| bad()),
            "probs" => arg
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Self::Probabilities)
                .map_err(|_| bad()),
            "file" if !arg.is_empty() => Ok(Self::File(PathBuf::from(arg))),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Canonical(n) => write!(f, "canonical:{n}"),
            Self::Type(t) => write!(f, "type:{t}"),
            Self::TwoArmed(p) => write!(f, "two-armed:{p}"),
            Self::Probabilities(ps) => {
                let joined: Vec<String> = ps.iter().map(f64::to_string).collect();
                write!(f, "probs:{}", joined.join(","))
            }
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl TryFrom<String> for ProblemSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ProblemSpec> for String {
    fn from(p: ProblemSpec) -> Self {
        p.to_string()
    }
}

#[derive(Deserialize)]
struct ProblemFile {
    probabilities: Vec<f64>,
    #[serde(default)]
    seed: u64,
}

/// Read `{"probabilities": [...], "seed": ...}`.
pub fn load_problem(path: &Path) -> Result<BanditProblem> {
    let text = fs::read_to_string(path).map_err(|e| Error::ProblemFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let file: ProblemFile = serde_json::from_str(&text).map_err(|e| Error::ProblemFile {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    BanditProblem::new(file.probabilities, file.seed)
}
