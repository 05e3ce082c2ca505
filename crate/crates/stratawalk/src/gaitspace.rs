//! Decomposing gaits into signed mode-pair building blocks, and back.
//!
//! Over one cycle the rotor angle sweeps up and down across a set of
//! intervals. Every upward crossing of an interval must eventually be paid
//! back by a downward crossing, and each matched up/down pair in *different*
//! contact modes is a small closed loop — out in one mode, back in the other
//! — whose net translation is an exact panel integral. A matched pair in the
//! *same* mode is a transit: it cancels and moves nothing.
//!
//! [`reduce`] rewrites any valid gait as a list of these signed sub-gaits;
//! [`lift`] stitches a list of sub-gaits back into one executable cyclic
//! gait. Reducing, summing panel integrals, and integrating the original
//! trajectory all agree on the cycle's displacement.

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gait::{validate_gait, Gait, GaitError, GaitPrimitive};
use crate::kinematics::{ContactMode, SystemSpec};
use crate::panels::panel_displacement;

/// Traversal orientation of a sub-gait, serialized as `+1` / `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1.0` or `-1.0`, for scaling displacements.
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl From<Sign> for i8 {
    fn from(sign: Sign) -> i8 {
        match sign {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(value: i8) -> Result<Self, Self::Error> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

/// One signed building block: with `sign` positive, swing from `alpha_minus`
/// to `alpha_plus` pinned in `mode_i`, switch to `mode_j`, swing back, and
/// switch home. Negative sign runs the same loop backwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubGait {
    pub sign: Sign,
    pub mode_i: ContactMode,
    pub mode_j: ContactMode,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
}

impl SubGait {
    pub fn new(
        sign: Sign,
        mode_i: ContactMode,
        mode_j: ContactMode,
        alpha_minus: f64,
        alpha_plus: f64,
    ) -> Self {
        SubGait {
            sign,
            mode_i,
            mode_j,
            alpha_minus,
            alpha_plus,
        }
    }

    /// The same block traversed the other way round.
    pub fn flipped(&self) -> SubGait {
        SubGait {
            sign: self.sign.flipped(),
            ..*self
        }
    }
}

/// A gait rewritten as signed sub-gaits, in the order their loops open
/// along the original cycle.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaitDecomposition {
    pub subgaits: Vec<SubGait>,
}

impl GaitDecomposition {
    pub fn new(subgaits: Vec<SubGait>) -> Self {
        GaitDecomposition { subgaits }
    }

    pub fn len(&self) -> usize {
        self.subgaits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgaits.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum DecomposeError {
    #[error("decomposition has no sub-gaits")]
    Empty,
    #[error("sub-gait {index}: alpha value {alpha} is not finite")]
    NonFiniteAlpha { index: usize, alpha: f64 },
    #[error("sub-gait {index}: contact mode {mode} does not exist on this walker")]
    UnknownMode { index: usize, mode: usize },
    #[error("sub-gait {index}: both contact modes are S{mode}; a sub-gait needs two")]
    SameMode { index: usize, mode: usize },
    #[error(
        "sub-gait {index}: alpha interval [{alpha_minus}, {alpha_plus}] is empty or reversed"
    )]
    EmptyInterval {
        index: usize,
        alpha_minus: f64,
        alpha_plus: f64,
    },
    #[error("sub-gait {index}: alpha {alpha} leaves the rotor swing range")]
    AlphaOutOfRange { index: usize, alpha: f64 },
}

fn validate_subgait(spec: &SystemSpec, index: usize, sg: &SubGait) -> Result<(), DecomposeError> {
    for alpha in [sg.alpha_minus, sg.alpha_plus] {
        if !alpha.is_finite() {
            return Err(DecomposeError::NonFiniteAlpha { index, alpha });
        }
    }
    for mode in [sg.mode_i, sg.mode_j] {
        if spec.check_mode(mode).is_err() {
            return Err(DecomposeError::UnknownMode {
                index,
                mode: mode.pinned_leg(),
            });
        }
    }
    if sg.mode_i == sg.mode_j {
        return Err(DecomposeError::SameMode {
            index,
            mode: sg.mode_i.pinned_leg(),
        });
    }
    // Alphas are known finite here, so this is a total comparison.
    if sg.alpha_minus >= sg.alpha_plus {
        return Err(DecomposeError::EmptyInterval {
            index,
            alpha_minus: sg.alpha_minus,
            alpha_plus: sg.alpha_plus,
        });
    }
    for alpha in [sg.alpha_minus, sg.alpha_plus] {
        if !spec.alpha_in_bounds(alpha) {
            return Err(DecomposeError::AlphaOutOfRange { index, alpha });
        }
    }
    Ok(())
}

/// Check every sub-gait of a decomposition against a walker.
pub fn validate_decomposition(
    spec: &SystemSpec,
    decomposition: &GaitDecomposition,
) -> Result<(), DecomposeError> {
    for (index, sg) in decomposition.subgaits.iter().enumerate() {
        validate_subgait(spec, index, sg)?;
    }
    Ok(())
}

/// Net translation of a decomposition: the signed sum of exact panel
/// integrals, one per sub-gait.
pub fn displacement_from_subgaits(
    spec: &SystemSpec,
    decomposition: &GaitDecomposition,
) -> Result<Vector2<f64>, DecomposeError> {
    validate_decomposition(spec, decomposition)?;
    let mut total = Vector2::new(0.0, 0.0);
    for sg in &decomposition.subgaits {
        let z = panel_displacement(spec, sg.mode_i, sg.mode_j, sg.alpha_minus, sg.alpha_plus)
            .expect("sub-gait already validated");
        total += sg.sign.value() * z;
    }
    Ok(total)
}

/// Orient an unordered mode pair the canonical way: a leg and its cyclic
/// successor read in cycle order — `(k, k+1)`, and `(N, 1)` for the
/// wrap-around pair when there are at least three legs. Pairs that are not
/// cyclic neighbours read in ascending order.
fn canonical_pair(n_legs: usize, a: usize, b: usize) -> (usize, usize) {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi == lo + 1 {
        (lo, hi)
    } else if lo == 1 && hi == n_legs && n_legs >= 3 {
        (hi, lo)
    } else {
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy)]
struct Crossing {
    seq: usize,
    upward: bool,
    mode: ContactMode,
}

/// Rewrite a valid gait as signed sub-gaits.
///
/// The rotor axis is cut at every swing endpoint, so each swing crosses a
/// run of elementary intervals. Walking the cycle in order, each interval's
/// crossings are matched innermost-first (an upward crossing pairs with the
/// next opposite crossing of the same interval, stack-wise). A matched pair
/// in two different modes becomes one sub-gait over that interval, oriented
/// against the canonical order of its mode pair; a matched pair in a single
/// mode is a transit and is dropped. Sub-gaits are returned in the order
/// their opening crossings occur along the cycle.
///
/// The signed panel sum of the result reproduces the gait's displacement
/// exactly (up to rounding), whichever way the crossings interleave.
pub fn reduce(spec: &SystemSpec, gait: &Gait) -> Result<GaitDecomposition, GaitError> {
    validate_gait(spec, gait)?;

    let mut breakpoints: Vec<f64> = gait
        .primitives
        .iter()
        .filter_map(|p| match *p {
            GaitPrimitive::Swing {
                alpha_start,
                alpha_end,
                ..
            } => Some([alpha_start, alpha_end]),
            GaitPrimitive::Switch { .. } => None,
        })
        .flatten()
        .collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();
    if breakpoints.len() < 2 {
        // Every swing is zero-width; nothing encloses anything.
        return Ok(GaitDecomposition::default());
    }
    let interval_count = breakpoints.len() - 1;
    let index_of = |alpha: f64| breakpoints.partition_point(|&b| b < alpha);

    // Crossing events per elementary interval, in cycle order.
    let mut per_interval: Vec<Vec<Crossing>> = vec![Vec::new(); interval_count];
    let mut seq = 0;
    for prim in &gait.primitives {
        let (mode, alpha_start, alpha_end) = match *prim {
            GaitPrimitive::Swing {
                mode,
                alpha_start,
                alpha_end,
            } => (mode, alpha_start, alpha_end),
            GaitPrimitive::Switch { .. } => continue,
        };
        if alpha_start == alpha_end {
            continue;
        }
        let upward = alpha_end > alpha_start;
        let lo = index_of(alpha_start.min(alpha_end));
        let hi = index_of(alpha_start.max(alpha_end));
        let span = lo..hi;
        let ordered: Vec<usize> = if upward {
            span.collect()
        } else {
            span.rev().collect()
        };
        for k in ordered {
            per_interval[k].push(Crossing { seq, upward, mode });
            seq += 1;
        }
    }

    struct Pair {
        opening_seq: usize,
        up_mode: ContactMode,
        down_mode: ContactMode,
        interval: usize,
    }
    let mut pairs: Vec<Pair> = Vec::new();
    for (k, crossings) in per_interval.iter().enumerate() {
        let mut stack: Vec<Crossing> = Vec::new();
        for &event in crossings {
            match stack.last() {
                Some(top) if top.upward != event.upward => {
                    let top = stack.pop().expect("just peeked");
                    let (up_mode, down_mode) = if event.upward {
                        (event.mode, top.mode)
                    } else {
                        (top.mode, event.mode)
                    };
                    if up_mode != down_mode {
                        pairs.push(Pair {
                            opening_seq: top.seq,
                            up_mode,
                            down_mode,
                            interval: k,
                        });
                    }
                }
                _ => stack.push(event),
            }
        }
        // A cyclic gait crosses every interval upward and downward equally
        // often, so the matching always balances out.
        debug_assert!(stack.is_empty(), "unbalanced crossings in a cyclic gait");
    }

    pairs.sort_by_key(|p| p.opening_seq);
    let subgaits = pairs
        .into_iter()
        .map(|p| {
            let (i, j) = canonical_pair(
                spec.leg_count(),
                p.up_mode.pinned_leg(),
                p.down_mode.pinned_leg(),
            );
            let sign = if (p.up_mode.pinned_leg(), p.down_mode.pinned_leg()) == (i, j) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            SubGait {
                sign,
                mode_i: ContactMode::new(i).expect("derived from valid modes"),
                mode_j: ContactMode::new(j).expect("derived from valid modes"),
                alpha_minus: breakpoints[p.interval],
                alpha_plus: breakpoints[p.interval + 1],
            }
        })
        .collect();
    Ok(GaitDecomposition::new(subgaits))
}

/// Stitch a decomposition back into one executable cyclic gait.
///
/// The cycle starts where the first sub-gait's loop does. Each subsequent
/// sub-gait is reached by a contact switch and/or a transit swing from that
/// home state and left the same way in reverse, so the inserted travel
/// cancels itself exactly and the lifted gait's displacement equals the
/// decomposition's signed panel sum. A single sub-gait lifts to its bare
/// four-primitive loop.
pub fn lift(spec: &SystemSpec, decomposition: &GaitDecomposition) -> Result<Gait, DecomposeError> {
    validate_decomposition(spec, decomposition)?;
    let first = decomposition.subgaits.first().ok_or(DecomposeError::Empty)?;

    let entry_mode = |sg: &SubGait| match sg.sign {
        Sign::Plus => sg.mode_i,
        Sign::Minus => sg.mode_j,
    };
    let exit_mode = |sg: &SubGait| match sg.sign {
        Sign::Plus => sg.mode_j,
        Sign::Minus => sg.mode_i,
    };

    let home_mode = entry_mode(first);
    let home_alpha = first.alpha_minus;

    let mut prims: Vec<GaitPrimitive> = Vec::new();
    for sg in &decomposition.subgaits {
        let (first_leg, second_leg) = (entry_mode(sg), exit_mode(sg));
        if home_mode != first_leg {
            prims.push(GaitPrimitive::Switch {
                from_mode: home_mode,
                to_mode: first_leg,
                at_alpha: home_alpha,
            });
        }
        if home_alpha != sg.alpha_minus {
            prims.push(GaitPrimitive::Swing {
                mode: first_leg,
                alpha_start: home_alpha,
                alpha_end: sg.alpha_minus,
            });
        }
        prims.extend([
            GaitPrimitive::Swing {
                mode: first_leg,
                alpha_start: sg.alpha_minus,
                alpha_end: sg.alpha_plus,
            },
            GaitPrimitive::Switch {
                from_mode: first_leg,
                to_mode: second_leg,
                at_alpha: sg.alpha_plus,
            },
            GaitPrimitive::Swing {
                mode: second_leg,
                alpha_start: sg.alpha_plus,
                alpha_end: sg.alpha_minus,
            },
            GaitPrimitive::Switch {
                from_mode: second_leg,
                to_mode: first_leg,
                at_alpha: sg.alpha_minus,
            },
        ]);
        if home_alpha != sg.alpha_minus {
            prims.push(GaitPrimitive::Swing {
                mode: first_leg,
                alpha_start: sg.alpha_minus,
                alpha_end: home_alpha,
            });
        }
        if home_mode != first_leg {
            prims.push(GaitPrimitive::Switch {
                from_mode: first_leg,
                to_mode: home_mode,
                at_alpha: home_alpha,
            });
        }
    }
    Ok(Gait::new(prims))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gait::{gait_displacement_panels, reconstruct_trajectory};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn biped() -> SystemSpec {
        SystemSpec::uniform(2, 1.0, PI, 0.1).unwrap()
    }

    fn triped() -> SystemSpec {
        SystemSpec::uniform(3, 1.0, PI, 0.1).unwrap()
    }

    fn mode(i: usize) -> ContactMode {
        ContactMode::new(i).unwrap()
    }

    fn swing(m: usize, a: f64, b: f64) -> GaitPrimitive {
        GaitPrimitive::Swing {
            mode: mode(m),
            alpha_start: a,
            alpha_end: b,
        }
    }

    fn switch(from: usize, to: usize, at: f64) -> GaitPrimitive {
        GaitPrimitive::Switch {
            from_mode: mode(from),
            to_mode: mode(to),
            at_alpha: at,
        }
    }

    fn subgait(sign: Sign, i: usize, j: usize, lo: f64, hi: f64) -> SubGait {
        SubGait::new(sign, mode(i), mode(j), lo, hi)
    }

    /// Three-legged tour: each swing hands over to the next leg so that the
    /// cycle encloses one block per cyclically adjacent mode pair.
    fn three_leg_tour() -> Gait {
        Gait::new(vec![
            swing(1, -FRAC_PI_4, FRAC_PI_4),
            switch(1, 3, FRAC_PI_4),
            swing(3, FRAC_PI_4, FRAC_PI_2),
            switch(3, 2, FRAC_PI_2),
            swing(2, FRAC_PI_2, -FRAC_PI_4),
            switch(2, 1, -FRAC_PI_4),
            swing(1, -FRAC_PI_4, -FRAC_PI_2),
            switch(1, 3, -FRAC_PI_2),
            swing(3, -FRAC_PI_2, -FRAC_PI_4),
            switch(3, 1, -FRAC_PI_4),
        ])
    }

    #[test]
    fn three_leg_tour_reduces_to_three_blocks_in_order() {
        let decomposition = reduce(&triped(), &three_leg_tour()).unwrap();
        assert_eq!(
            decomposition.subgaits,
            vec![
                subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4),
                subgait(Sign::Minus, 2, 3, FRAC_PI_4, FRAC_PI_2),
                subgait(Sign::Plus, 3, 1, -FRAC_PI_2, -FRAC_PI_4),
            ]
        );
    }

    #[test]
    fn three_leg_tour_panel_sum_matches_trajectory() {
        let spec = triped();
        let gait = three_leg_tour();
        let by_panels = gait_displacement_panels(&spec, &gait).unwrap();
        let by_trajectory = reconstruct_trajectory(&spec, &gait, 64)
            .unwrap()
            .displacement();
        assert_abs_diff_eq!((by_panels - by_trajectory).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn out_and_back_gait_is_one_positive_block() {
        let gait = Gait::new(vec![
            swing(1, -FRAC_PI_4, FRAC_PI_4),
            switch(1, 2, FRAC_PI_4),
            swing(2, FRAC_PI_4, -FRAC_PI_4),
            switch(2, 1, -FRAC_PI_4),
        ]);
        let decomposition = reduce(&biped(), &gait).unwrap();
        assert_eq!(
            decomposition.subgaits,
            vec![subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4)]
        );
    }

    #[test]
    fn clockwise_loop_reduces_with_negative_sign() {
        // Forward in mode 2 first, back in mode 1: the same block backwards.
        let gait = Gait::new(vec![
            swing(2, -FRAC_PI_4, FRAC_PI_4),
            switch(2, 1, FRAC_PI_4),
            swing(1, FRAC_PI_4, -FRAC_PI_4),
            switch(1, 2, -FRAC_PI_4),
        ]);
        let decomposition = reduce(&biped(), &gait).unwrap();
        assert_eq!(
            decomposition.subgaits,
            vec![subgait(Sign::Minus, 1, 2, -FRAC_PI_4, FRAC_PI_4)]
        );
    }

    #[test]
    fn transits_are_dropped_but_split_intervals() {
        // A quarter-swing loop plus an out-and-back transit in mode 1 whose
        // turning point 0.3 cuts the axis: the block shows up split at 0.3
        // and no same-mode pair survives.
        let gait = Gait::new(vec![
            swing(1, -0.5, 0.5),
            switch(1, 2, 0.5),
            swing(2, 0.5, -0.5),
            switch(2, 1, -0.5),
            swing(1, -0.5, 0.3),
            swing(1, 0.3, -0.5),
        ]);
        let decomposition = reduce(&biped(), &gait).unwrap();
        assert_eq!(
            decomposition.subgaits,
            vec![
                subgait(Sign::Plus, 1, 2, -0.5, 0.3),
                subgait(Sign::Plus, 1, 2, 0.3, 0.5),
            ]
        );
    }

    #[test]
    fn zero_width_swings_reduce_to_nothing() {
        let gait = Gait::new(vec![
            swing(1, 0.2, 0.2),
            switch(1, 2, 0.2),
            swing(2, 0.2, 0.2),
            switch(2, 1, 0.2),
        ]);
        let decomposition = reduce(&biped(), &gait).unwrap();
        assert!(decomposition.is_empty());
    }

    #[test]
    fn reversal_flips_every_sign() {
        let spec = triped();
        let forward = reduce(&spec, &three_leg_tour()).unwrap();
        let backward = reduce(&spec, &three_leg_tour().reversed()).unwrap();
        let key = |sg: &SubGait| {
            (
                sg.mode_i.pinned_leg(),
                sg.mode_j.pinned_leg(),
                sg.alpha_minus.to_bits(),
                sg.alpha_plus.to_bits(),
            )
        };
        let mut flipped: Vec<SubGait> = forward.subgaits.iter().map(|sg| sg.flipped()).collect();
        let mut reversed = backward.subgaits.clone();
        flipped.sort_by_key(key);
        reversed.sort_by_key(key);
        assert_eq!(flipped, reversed);
    }

    #[test]
    fn wrap_around_pair_orientation_depends_on_leg_count() {
        assert_eq!(canonical_pair(2, 2, 1), (1, 2));
        assert_eq!(canonical_pair(3, 1, 3), (3, 1));
        assert_eq!(canonical_pair(4, 4, 1), (4, 1));
        assert_eq!(canonical_pair(4, 3, 1), (1, 3)); // not cyclically adjacent
        assert_eq!(canonical_pair(5, 2, 3), (2, 3));
    }

    #[test]
    fn non_adjacent_pair_reduces_in_ascending_order() {
        let spec = SystemSpec::uniform(4, 1.0, PI, 0.1).unwrap();
        let gait = Gait::new(vec![
            swing(1, -0.4, 0.4),
            switch(1, 3, 0.4),
            swing(3, 0.4, -0.4),
            switch(3, 1, -0.4),
        ]);
        let decomposition = reduce(&spec, &gait).unwrap();
        assert_eq!(
            decomposition.subgaits,
            vec![subgait(Sign::Plus, 1, 3, -0.4, 0.4)]
        );
    }

    #[test]
    fn lift_of_single_block_is_the_bare_loop() {
        let spec = biped();
        let decomposition =
            GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4)]);
        let gait = lift(&spec, &decomposition).unwrap();
        assert_eq!(
            gait.primitives,
            vec![
                swing(1, -FRAC_PI_4, FRAC_PI_4),
                switch(1, 2, FRAC_PI_4),
                swing(2, FRAC_PI_4, -FRAC_PI_4),
                switch(2, 1, -FRAC_PI_4),
            ]
        );
        assert_eq!(validate_gait(&spec, &gait), Ok(()));
    }

    #[test]
    fn lift_of_negative_block_enters_through_the_second_mode() {
        let spec = biped();
        let decomposition =
            GaitDecomposition::new(vec![subgait(Sign::Minus, 1, 2, -FRAC_PI_4, FRAC_PI_4)]);
        let gait = lift(&spec, &decomposition).unwrap();
        assert_eq!(
            gait.primitives,
            vec![
                swing(2, -FRAC_PI_4, FRAC_PI_4),
                switch(2, 1, FRAC_PI_4),
                swing(1, FRAC_PI_4, -FRAC_PI_4),
                switch(1, 2, -FRAC_PI_4),
            ]
        );
    }

    #[test]
    fn lift_stitches_disjoint_blocks_into_a_valid_cycle() {
        let spec = triped();
        let decomposition = GaitDecomposition::new(vec![
            subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4),
            subgait(Sign::Minus, 2, 3, FRAC_PI_4, FRAC_PI_2),
            subgait(Sign::Plus, 3, 1, -FRAC_PI_2, -FRAC_PI_4),
        ]);
        let gait = lift(&spec, &decomposition).unwrap();
        assert_eq!(validate_gait(&spec, &gait), Ok(()));
        let by_trajectory = reconstruct_trajectory(&spec, &gait, 64)
            .unwrap()
            .displacement();
        let by_panels = displacement_from_subgaits(&spec, &decomposition).unwrap();
        assert_abs_diff_eq!((by_trajectory - by_panels).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lift_matches_the_gait_it_came_from() {
        let spec = triped();
        let gait = three_leg_tour();
        let decomposition = reduce(&spec, &gait).unwrap();
        let lifted = lift(&spec, &decomposition).unwrap();
        assert_eq!(validate_gait(&spec, &lifted), Ok(()));
        let original = reconstruct_trajectory(&spec, &gait, 64).unwrap().displacement();
        let relifted = reconstruct_trajectory(&spec, &lifted, 64)
            .unwrap()
            .displacement();
        assert_abs_diff_eq!((original - relifted).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lift_rejects_empty_and_invalid_input() {
        let spec = biped();
        assert_eq!(
            lift(&spec, &GaitDecomposition::default()),
            Err(DecomposeError::Empty)
        );
        let same = GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 1, -0.5, 0.5)]);
        assert_eq!(
            lift(&spec, &same),
            Err(DecomposeError::SameMode { index: 0, mode: 1 })
        );
        let reversed = GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 2, 0.5, -0.5)]);
        assert_eq!(
            lift(&spec, &reversed),
            Err(DecomposeError::EmptyInterval {
                index: 0,
                alpha_minus: 0.5,
                alpha_plus: -0.5,
            })
        );
        let wide = GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 2, -0.5, 3.0)]);
        assert_eq!(
            lift(&spec, &wide),
            Err(DecomposeError::AlphaOutOfRange {
                index: 0,
                alpha: 3.0
            })
        );
        let ghost = GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 5, -0.5, 0.5)]);
        assert_eq!(
            lift(&spec, &ghost),
            Err(DecomposeError::UnknownMode { index: 0, mode: 5 })
        );
    }

    #[test]
    fn displacement_from_subgaits_matches_hand_value() {
        // One positive biped block over the quarter swing: (0, -2*sqrt(2)).
        let spec = biped();
        let decomposition =
            GaitDecomposition::new(vec![subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4)]);
        let z = displacement_from_subgaits(&spec, &decomposition).unwrap();
        assert_abs_diff_eq!(z.x, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z.y, -2.0 * 2.0f64.sqrt(), epsilon = 1e-14);
        // The flipped block undoes it.
        let both = GaitDecomposition::new(vec![
            subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4),
            subgait(Sign::Minus, 1, 2, -FRAC_PI_4, FRAC_PI_4),
        ]);
        let zero = displacement_from_subgaits(&spec, &both).unwrap();
        assert_eq!(zero, Vector2::new(0.0, 0.0));
    }

    #[test]
    fn sign_serde_uses_plus_minus_one() {
        assert_eq!(serde_json::to_string(&Sign::Plus).unwrap(), "1");
        assert_eq!(serde_json::to_string(&Sign::Minus).unwrap(), "-1");
        assert_eq!(serde_json::from_str::<Sign>("-1").unwrap(), Sign::Minus);
        assert!(serde_json::from_str::<Sign>("0").is_err());
    }

    #[test]
    fn decomposition_serde_round_trip() {
        let decomposition = GaitDecomposition::new(vec![
            subgait(Sign::Plus, 1, 2, -FRAC_PI_4, FRAC_PI_4),
            subgait(Sign::Minus, 2, 3, FRAC_PI_4, FRAC_PI_2),
        ]);
        let json = serde_json::to_string_pretty(&decomposition).unwrap();
        let back: GaitDecomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(decomposition, back);
    }
}
