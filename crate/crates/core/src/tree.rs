//! The threshold tree and its learning rule.
//!
//! A tree of depth `M` holds `2^M - 1` nodes, one per bit prefix. Deciding a
//! machine reads `M` samples, one per level: bit `k` is 0 when its sample is
//! at most the quantized threshold of the node addressed by bits `1..k`,
//! otherwise 1. Bits are produced strictly in order and each only looks at its
//! own sample and the prefix already decided, so the levels can be pipelined.
//!
//! After a play, each node on the decided path moves its threshold:
//!
//! ```text
//! win : th <- (+Δ if bit = 0 else -Δ) + α·th
//! loss: th <- (-Ω if bit = 0 else +Ω) + α·th
//! ```
//!
//! with `Ω = (P̂0 + P̂1) / (2 - (P̂0 + P̂1))` recomputed at that node from its
//! selection and win counters on every loss.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{SAMPLE_MAX, SAMPLE_MIN};

/// Largest supported depth (64 arms in the reference problems; 2^20 leaves is
/// already far beyond any practical run).
pub const MAX_DEPTH: usize = 20;

/// Learning parameters shared by every node of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    /// Threshold increment on a win.
    pub delta: f64,
    /// Forgetting factor applied to the previous threshold on every update.
    pub alpha: f64,
    /// Threshold half-range: quantized levels are `-z..=z`, `2z + 1` in total.
    pub z: u32,
    /// Ω used when both estimated win rates are 1 (Ω's denominator vanishes).
    pub omega_max: f64,
    /// Replace the adaptive Ω by a constant (0 freezes loss updates).
    #[serde(default)]
    pub omega_override: Option<f64>,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            delta: 1.0,
            alpha: 0.99,
            z: 128,
            omega_max: 100.0,
            omega_override: None,
        }
    }
}

impl TreeParams {
    /// `2^K + 1` threshold levels, i.e. `Z = 2^(K-1)`.
    pub fn with_levels_exponent(mut self, k: u32) -> Result<Self> {
        if !(1..=8).contains(&k) {
            return Err(Error::InvalidParams(format!(
                "threshold-level exponent must lie in 1..=8, got {k}"
            )));
        }
        self.z = 1 << (k - 1);
        Ok(self)
    }

    /// Updates that leave every threshold unchanged (Δ = 0, α = 1, Ω = 0).
    pub fn frozen() -> Self {
        Self {
            delta: 0.0,
            alpha: 1.0,
            omega_override: Some(0.0),
            ..Self::default()
        }
    }

    /// Scale from quantized level to sample units, `a = 128 / Z`.
    pub fn a_scale(&self) -> f64 {
        f64::from(SAMPLE_MAX) / f64::from(self.z)
    }

    pub fn validate(&self) -> Result<()> {
        if self.z == 0 {
            return Err(Error::InvalidParams("Z must be a natural number".into()));
        }
        if !(self.alpha.is_finite() && (0.0..=1.0).contains(&self.alpha)) {
            return Err(Error::InvalidParams(format!(
                "α must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "Δ must be finite, got {}",
                self.delta
            )));
        }
        if !(self.omega_max.is_finite() && self.omega_max >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "Ω_max must be non-negative, got {}",
                self.omega_max
            )));
        }
        if let Some(o) = self.omega_override {
            if !(o.is_finite() && o >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "Ω override must be non-negative, got {o}"
                )));
            }
        }
        Ok(())
    }
}

/// Sampling offsets, in raw samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Gap between the last sample of one decision and the first of the next.
    pub delta_s_samples: usize,
    /// Gap between consecutive bits of one decision; 0 reuses one sample.
    pub delta_l_samples: usize,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        Self {
            delta_s_samples: 5,
            delta_l_samples: 10,
        }
    }
}

impl SamplingPlan {
    pub fn new(delta_s_samples: usize, delta_l_samples: usize) -> Result<Self> {
        let plan = Self {
            delta_s_samples,
            delta_l_samples,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.delta_s_samples == 0 {
            return Err(Error::InvalidParams(
                "Δ_s must be at least one sample".into(),
            ));
        }
        Ok(())
    }

    /// Offset of the last sample of a decision relative to its first.
    pub fn decision_span(&self, depth: usize) -> usize {
        (depth - 1) * self.delta_l_samples
    }

    /// Distance between the first samples of consecutive decisions.
    pub fn stride(&self, depth: usize) -> usize {
        self.decision_span(depth) + self.delta_s_samples
    }
}

/// State of one node: the unquantized threshold, selection counts `c`, win
/// counts `l` (indexed by the bit decided at this node) and Ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub th: f64,
    pub c0: u64,
    pub c1: u64,
    pub l0: u64,
    pub l1: u64,
    pub omega: f64,
}

impl Default for Node {
    fn default() -> Self {
        Self {
            th: 0.0,
            c0: 0,
            c1: 0,
            l0: 0,
            l1: 0,
            omega: 1.0,
        }
    }
}

impl Node {
    fn selections(&self, side: u8) -> u64 {
        if side == 0 {
            self.c0
        } else {
            self.c1
        }
    }

    fn wins(&self, side: u8) -> u64 {
        if side == 0 {
            self.l0
        } else {
            self.l1
        }
    }

    /// Win frequency `l / c` on one side; 0.5 before that side is ever chosen.
    pub fn estimated_reward_probability(&self, side: u8) -> f64 {
        let c = self.selections(side);
        if c == 0 {
            0.5
        } else {
            self.wins(side) as f64 / c as f64
        }
    }

    fn count(&mut self, side: u8, won: bool) {
        let (c, l) = if side == 0 {
            (&mut self.c0, &mut self.l0)
        } else {
            (&mut self.c1, &mut self.l1)
        };
        *c += 1;
        if won {
            *l += 1;
        }
    }

    /// Ω from the current counters. Holds the previous value while either side
    /// is unexplored.
    fn recompute_omega(&mut self, omega_max: f64) {
        if self.c0 == 0 || self.c1 == 0 {
            return;
        }
        let sum = self.estimated_reward_probability(0) + self.estimated_reward_probability(1);
        self.omega = if sum >= 2.0 {
            omega_max
        } else {
            sum / (2.0 - sum)
        };
    }
}

/// Bits `D_1..D_M` (MSB first) of one decision plus the samples that set them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub bits: Vec<u8>,
    pub machine: usize,
    pub sample_indices: Vec<usize>,
    pub reward: Option<bool>,
}

impl DecisionRecord {
    /// Record for a machine chosen externally (no samples consumed).
    pub fn for_machine(machine: usize, depth: usize) -> Result<Self> {
        let arms = 1usize << depth;
        if machine >= arms {
            return Err(Error::MachineOutOfRange { machine, arms });
        }
        let bits = (0..depth)
            .map(|k| ((machine >> (depth - 1 - k)) & 1) as u8)
            .collect();
        Ok(Self {
            bits,
            machine,
            sample_indices: Vec::new(),
            reward: None,
        })
    }
}

/// Round to nearest, ties toward zero.
pub fn round_half_toward_zero(x: f64) -> f64 {
    let t = x.trunc();
    if (x - t).abs() == 0.5 {
        t
    } else {
        x.round()
    }
}

/// All `2^M - 1` thresholds with their counters.
///
/// Nodes are stored breadth-first: the node for a prefix of length `k - 1`
/// with binary value `p` lives at `2^(k-1) - 1 + p`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdTree {
    depth: usize,
    nodes: Vec<Node>,
    params: TreeParams,
}

impl ThresholdTree {
    /// Fresh tree, all thresholds 0 and Ω = 1.
    pub fn new(depth: usize, params: TreeParams) -> Result<Self> {
        if !(1..=MAX_DEPTH).contains(&depth) {
            return Err(Error::InvalidParams(format!(
                "depth must lie in 1..={MAX_DEPTH}, got {depth}"
            )));
        }
        params.validate()?;
        Ok(Self {
            depth,
            nodes: vec![Node::default(); (1 << depth) - 1],
            params,
        })
    }

    /// Tree sized for `arms` machines (a power of two ≥ 2).
    pub fn for_arms(arms: usize, params: TreeParams) -> Result<Self> {
        if arms < 2 || !arms.is_power_of_two() {
            return Err(Error::InvalidParams(format!(
                "arm count must be a power of two ≥ 2, got {arms}"
            )));
        }
        Self::new(arms.trailing_zeros() as usize, params)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn arms(&self) -> usize {
        1 << self.depth
    }

    pub fn params(&self) -> &TreeParams {
        &self.params
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Index of the node deciding bit `level` (1-based) under `prefix`, whose
    /// `level - 1` low bits are the bits already decided, MSB first.
    pub fn node_index(&self, level: usize, prefix: usize) -> usize {
        debug_assert!(level >= 1 && level <= self.depth);
        debug_assert!(prefix < 1 << (level - 1));
        (1 << (level - 1)) - 1 + prefix
    }

    pub fn node(&self, level: usize, prefix: usize) -> &Node {
        &self.nodes[self.node_index(level, prefix)]
    }

    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    /// Overwrite the stored (unquantized) threshold of one node.
    pub fn set_threshold(&mut self, level: usize, prefix: usize, th: f64) {
        let i = self.node_index(level, prefix);
        self.nodes[i].th = self.clamp_stored(th);
    }

    fn clamp_stored(&self, th: f64) -> f64 {
        let bound = 2.0 * f64::from(self.params.z);
        th.clamp(-bound, bound)
    }

    /// `a · r(th)` with `r` rounding ties toward zero and clamped to `[-Z, Z]`.
    pub fn quantize_threshold(&self, th: f64) -> f64 {
        let z = f64::from(self.params.z);
        self.params.a_scale() * round_half_toward_zero(th).clamp(-z, z)
    }

    /// Quantized threshold of one node.
    pub fn effective_threshold(&self, level: usize, prefix: usize) -> f64 {
        self.quantize_threshold(self.node(level, prefix).th)
    }

    /// Decide one machine from `samples` starting at `start`.
    pub fn decide(
        &self,
        samples: &[i16],
        start: usize,
        plan: &SamplingPlan,
    ) -> Result<DecisionRecord> {
        let last = start + plan.decision_span(self.depth);
        if last >= samples.len() {
            return Err(Error::SeriesExhausted {
                needed: last + 1,
                len: samples.len(),
            });
        }
        let mut bits = Vec::with_capacity(self.depth);
        let mut sample_indices = Vec::with_capacity(self.depth);
        let mut prefix = 0usize;
        for level in 1..=self.depth {
            let idx = start + (level - 1) * plan.delta_l_samples;
            let bit = self.decide_bit(level, prefix, samples[idx]);
            bits.push(bit);
            sample_indices.push(idx);
            prefix = (prefix << 1) | usize::from(bit);
        }
        Ok(DecisionRecord {
            bits,
            machine: prefix,
            sample_indices,
            reward: None,
        })
    }

    /// One comparison: 0 when `sample ≤ threshold`.
    pub fn decide_bit(&self, level: usize, prefix: usize, sample: i16) -> u8 {
        u8::from(f64::from(sample) > self.effective_threshold(level, prefix))
    }

    /// Decide with an explicit sample per level (indices are left empty).
    pub fn decide_from_samples(&self, level_samples: &[i16]) -> Result<DecisionRecord> {
        if level_samples.len() != self.depth {
            return Err(Error::InvalidParams(format!(
                "need {} samples, got {}",
                self.depth,
                level_samples.len()
            )));
        }
        let mut prefix = 0usize;
        let mut bits = Vec::with_capacity(self.depth);
        for (k, &s) in level_samples.iter().enumerate() {
            let bit = self.decide_bit(k + 1, prefix, s);
            bits.push(bit);
            prefix = (prefix << 1) | usize::from(bit);
        }
        Ok(DecisionRecord {
            bits,
            machine: prefix,
            sample_indices: Vec::new(),
            reward: None,
        })
    }

    fn check_record(&self, record: &DecisionRecord) -> Result<()> {
        if record.bits.len() != self.depth || record.bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParams(format!(
                "record has {} bits, tree depth is {}",
                record.bits.len(),
                self.depth
            )));
        }
        Ok(())
    }

    /// Apply the update matching `record.reward`.
    pub fn update(&mut self, record: &DecisionRecord) -> Result<()> {
        match record.reward {
            Some(true) => self.update_win(record),
            Some(false) => self.update_lose(record),
            None => Err(Error::InvalidParams("record has no reward outcome".into())),
        }
    }

    /// Reinforce the decided path: every node moves toward its decided bit by Δ.
    pub fn update_win(&mut self, record: &DecisionRecord) -> Result<()> {
        self.check_record(record)?;
        if record.reward == Some(false) {
            return Err(Error::InvalidParams("win update on a losing record".into()));
        }
        let TreeParams {
            delta,
            alpha,
            omega_max,
            ..
        } = self.params;
        let mut prefix = 0usize;
        for (k, &bit) in record.bits.iter().enumerate() {
            let i = self.node_index(k + 1, prefix);
            let step = if bit == 0 { delta } else { -delta };
            let th = step + alpha * self.nodes[i].th;
            self.nodes[i].th = self.clamp_stored(th);
            self.nodes[i].count(bit, true);
            self.nodes[i].recompute_omega(omega_max);
            prefix = (prefix << 1) | usize::from(bit);
        }
        Ok(())
    }

    /// Push the decided path away from its bits by each node's Ω.
    pub fn update_lose(&mut self, record: &DecisionRecord) -> Result<()> {
        self.check_record(record)?;
        if record.reward == Some(true) {
            return Err(Error::InvalidParams(
                "loss update on a winning record".into(),
            ));
        }
        let TreeParams {
            alpha,
            omega_max,
            omega_override,
            ..
        } = self.params;
        let mut prefix = 0usize;
        for (k, &bit) in record.bits.iter().enumerate() {
            let i = self.node_index(k + 1, prefix);
            let node = &mut self.nodes[i];
            node.count(bit, false);
            node.recompute_omega(omega_max);
            let omega = omega_override.unwrap_or(node.omega);
            let step = if bit == 0 { -omega } else { omega };
            let th = step + alpha * node.th;
            self.nodes[i].th = self.clamp_stored(th);
            prefix = (prefix << 1) | usize::from(bit);
        }
        Ok(())
    }

    /// Exact machine selection probabilities for i.i.d. samples drawn
    /// uniformly from the 256-value alphabet, by counting alphabet values on
    /// each side of every threshold.
    pub fn selection_probabilities(&self) -> Vec<f64> {
        let alphabet: Vec<i16> = (SAMPLE_MIN..=SAMPLE_MAX).collect();
        let n = alphabet.len() as f64;
        (0..self.arms())
            .map(|machine| {
                let mut p = 1.0;
                let mut prefix = 0usize;
                for k in 0..self.depth {
                    let bit = ((machine >> (self.depth - 1 - k)) & 1) as u8;
                    let hits = alphabet
                        .iter()
                        .filter(|&&s| self.decide_bit(k + 1, prefix, s) == bit)
                        .count();
                    p *= hits as f64 / n;
                    prefix = (prefix << 1) | usize::from(bit);
                }
                p
            })
            .collect()
    }

    /// JSON-friendly dump keyed by prefix string (`""`, `"0"`, `"1"`, `"01"`, ...).
    pub fn dump(&self) -> TreeDump {
        let mut nodes = BTreeMap::new();
        for level in 1..=self.depth {
            for prefix in 0..1usize << (level - 1) {
                let key: String = (0..level - 1)
                    .map(|j| {
                        if (prefix >> (level - 2 - j)) & 1 == 1 {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect();
                nodes.insert(key, *self.node(level, prefix));
            }
        }
        TreeDump {
            depth: self.depth,
            params: self.params,
            nodes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeDump {
    pub depth: usize,
    pub params: TreeParams,
    pub nodes: BTreeMap<String, Node>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(depth: usize) -> ThresholdTree {
        ThresholdTree::new(depth, TreeParams::default()).unwrap()
    }

    fn with_z(z: u32) -> ThresholdTree {
        ThresholdTree::new(
            1,
            TreeParams {
                z,
                ..TreeParams::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn node_count_and_scale() {
        for m in 1..=6 {
            assert_eq!(tree(m).nodes().len(), (1 << m) - 1);
        }
        assert_eq!(TreeParams::default().a_scale(), 1.0);
        let p = TreeParams::default().with_levels_exponent(3).unwrap();
        assert_eq!((p.z, p.a_scale()), (4, 32.0));
        assert!(TreeParams::default().with_levels_exponent(0).is_err());
        assert!(TreeParams::default().with_levels_exponent(9).is_err());
    }

    #[test]
    fn quantize_examples() {
        let t = with_z(128);
        assert_eq!(t.quantize_threshold(45.0), 45.0);
        assert_eq!(t.quantize_threshold(200.3), 128.0);
        assert_eq!(t.quantize_threshold(-200.3), -128.0);
        assert_eq!(with_z(4).quantize_threshold(2.5), 64.0);
        assert_eq!(with_z(4).quantize_threshold(-2.5), -64.0);
        assert_eq!(with_z(4).quantize_threshold(2.51), 96.0);
        assert_eq!(with_z(4).quantize_threshold(5.0), 128.0);
    }

    #[test]
    fn tie_rounding() {
        assert_eq!(round_half_toward_zero(0.5), 0.0);
        assert_eq!(round_half_toward_zero(-0.5), 0.0);
        assert_eq!(round_half_toward_zero(1.5), 1.0);
        assert_eq!(round_half_toward_zero(-1.5), -1.0);
        assert_eq!(round_half_toward_zero(1.6), 2.0);
        assert_eq!(round_half_toward_zero(-1.4), -1.0);
    }

    #[test]
    fn decide_single_bit() {
        let t = tree(1);
        let plan = SamplingPlan::default();
        assert_eq!(t.decide(&[-3], 0, &plan).unwrap().machine, 0);
        assert_eq!(t.decide(&[3], 0, &plan).unwrap().machine, 1);
        assert_eq!(t.decide(&[0], 0, &plan).unwrap().machine, 0);
    }

    #[test]
    fn decide_two_bits() {
        let t = tree(2);
        let plan = SamplingPlan::new(1, 1).unwrap();
        let r = t.decide(&[5, -5], 0, &plan).unwrap();
        assert_eq!(r.bits, vec![1, 0]);
        assert_eq!(r.machine, 2);
        assert_eq!(r.sample_indices, vec![0, 1]);
    }

    #[test]
    fn decide_uses_prefix_node() {
        let mut t = tree(2);
        t.set_threshold(2, 1, 10.0);
        let plan = SamplingPlan::new(1, 2).unwrap();
        // MSB 1, then 7 <= 10 under prefix "1".
        let r = t.decide(&[50, 99, 7], 0, &plan).unwrap();
        assert_eq!(r.bits, vec![1, 0]);
        assert_eq!(r.sample_indices, vec![0, 2]);
        // Prefix "0" node is still 0.
        let r = t.decide(&[-50, 99, 7], 0, &plan).unwrap();
        assert_eq!(r.bits, vec![0, 1]);
    }

    #[test]
    fn decide_exhausted() {
        let t = tree(3);
        let plan = SamplingPlan::new(1, 10).unwrap();
        match t.decide(&[0; 20], 0, &plan) {
            Err(Error::SeriesExhausted { needed, len }) => assert_eq!((needed, len), (21, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn win_update_examples() {
        let mut t = tree(1);
        let mut r = DecisionRecord::for_machine(0, 1).unwrap();
        r.reward = Some(true);
        t.update_win(&r).unwrap();
        assert_eq!(t.root().th, 1.0);
        assert_eq!((t.root().c0, t.root().l0), (1, 1));

        let mut t = tree(1);
        t.set_threshold(1, 0, 10.0);
        let mut r = DecisionRecord::for_machine(1, 1).unwrap();
        r.reward = Some(true);
        t.update_win(&r).unwrap();
        assert!((t.root().th - 8.9).abs() < 1e-12);

        let mut t = ThresholdTree::new(1, TreeParams::frozen()).unwrap();
        t.set_threshold(1, 0, 7.0);
        t.update_win(&r).unwrap();
        assert_eq!(t.root().th, 7.0);
        assert_eq!((t.root().c1, t.root().l1), (1, 1));
    }

    #[test]
    fn omega_examples() {
        let mut n = Node {
            c0: 10,
            c1: 10,
            l0: 9,
            l1: 7,
            ..Node::default()
        };
        n.recompute_omega(100.0);
        assert!((n.omega - 4.0).abs() < 1e-12);

        let mut n = Node {
            c0: 10,
            c1: 10,
            l0: 1,
            l1: 3,
            ..Node::default()
        };
        n.recompute_omega(100.0);
        assert!((n.omega - 0.25).abs() < 1e-12);

        let mut n = Node {
            c0: 10,
            c1: 0,
            l0: 3,
            ..Node::default()
        };
        n.recompute_omega(100.0);
        assert_eq!(n.omega, 1.0);

        let mut n = Node {
            c0: 4,
            c1: 2,
            l0: 4,
            l1: 2,
            ..Node::default()
        };
        n.recompute_omega(100.0);
        assert_eq!(n.omega, 100.0);
    }

    #[test]
    fn lose_update_counts_then_moves() {
        let mut t = tree(1);
        let mut r = DecisionRecord::for_machine(0, 1).unwrap();
        r.reward = Some(false);
        t.update_lose(&r).unwrap();
        // c1 = 0 so Ω stays 1.
        assert_eq!(t.root().th, -1.0);
        assert_eq!((t.root().c0, t.root().l0), (1, 0));

        // c0=10 l0=9, c1=9 l1=7 → after this loss on side 1: c1=10 → Ω=4.
        let mut t = tree(1);
        t.nodes[0] = Node {
            c0: 10,
            l0: 9,
            c1: 9,
            l1: 7,
            ..Node::default()
        };
        let mut r = DecisionRecord::for_machine(1, 1).unwrap();
        r.reward = Some(false);
        t.update_lose(&r).unwrap();
        assert!((t.root().omega - 4.0).abs() < 1e-12);
        assert!((t.root().th - 4.0).abs() < 1e-12);
    }

    #[test]
    fn estimated_probability() {
        let n = Node {
            c0: 1000,
            l0: 742,
            c1: 50,
            l1: 50,
            ..Node::default()
        };
        assert!((n.estimated_reward_probability(0) - 0.742).abs() < 1e-12);
        assert_eq!(n.estimated_reward_probability(1), 1.0);
        assert_eq!(Node::default().estimated_reward_probability(0), 0.5);
    }

    #[test]
    fn stored_threshold_is_clamped() {
        let mut t = with_z(4);
        t.set_threshold(1, 0, 100.0);
        assert_eq!(t.root().th, 8.0);
    }

    #[test]
    fn mismatched_reward_rejected() {
        let mut t = tree(2);
        let mut r = DecisionRecord::for_machine(3, 2).unwrap();
        r.reward = Some(false);
        assert!(t.update_win(&r).is_err());
        r.reward = Some(true);
        assert!(t.update_lose(&r).is_err());
        r.reward = None;
        assert!(t.update(&r).is_err());
        assert!(DecisionRecord::for_machine(4, 2).is_err());
    }

    #[test]
    fn dump_keys() {
        let d = tree(3).dump();
        let keys: Vec<&str> = d.nodes.keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["", "0", "00", "01", "1", "10", "11"]);
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["nodes"]["01"]["omega"], 1.0);
    }
}
