use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::FwError;

/// Relative twisting `(p, q)` of one Whitney disc against another: `p`
/// right-handed twists about the red arc and `q` about the green arc.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Twist {
    pub p: i64,
    pub q: i64,
}

impl Twist {
    pub const ZERO: Twist = Twist { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Twist {
        Twist { p, q }
    }

    /// Realizable twists in a spin ambient manifold have `p + q` even.
    pub fn parity_ok(self) -> bool {
        (self.p + self.q).rem_euclid(2) == 0
    }
}

impl Add for Twist {
    type Output = Twist;
    fn add(self, rhs: Twist) -> Twist {
        Twist::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Neg for Twist {
    type Output = Twist;
    fn neg(self) -> Twist {
        Twist::new(-self.p, -self.q)
    }
}

impl Sub for Twist {
    type Output = Twist;
    fn sub(self, rhs: Twist) -> Twist {
        self + (-rhs)
    }
}

pub fn twist_add(a: Twist, b: Twist) -> Twist {
    a + b
}

pub fn twist_negate(a: Twist) -> Twist {
    -a
}

pub fn twist_parity_ok(a: Twist) -> bool {
    a.parity_ok()
}

/// Shortest sequence of elementary twist changes summing to `target`.
///
/// Every step is `(±2, 0)` or `(0, ±2)`, except for a single leading `(1, 1)`
/// when both coordinates are odd. The `p` steps come before the `q` steps.
pub fn plan_twist_path(target: Twist) -> Result<Vec<Twist>, FwError> {
    if !target.parity_ok() {
        return Err(FwError::Parity(target));
    }
    let mut steps = Vec::new();
    let mut rest = target;
    if target.p.rem_euclid(2) == 1 {
        steps.push(Twist::new(1, 1));
        rest = rest - Twist::new(1, 1);
    }
    let p_step = Twist::new(2 * rest.p.signum(), 0);
    let q_step = Twist::new(0, 2 * rest.q.signum());
    steps.extend(std::iter::repeat_n(p_step, (rest.p.unsigned_abs() / 2) as usize));
    steps.extend(std::iter::repeat_n(q_step, (rest.q.unsigned_abs() / 2) as usize));
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_and_negation() {
        assert_eq!(twist_add(Twist::new(2, 0), Twist::new(1, 1)), Twist::new(3, 1));
        assert_eq!(twist_add(Twist::ZERO, Twist::new(-4, 7)), Twist::new(-4, 7));
        assert_eq!(twist_negate(Twist::new(1, 1)), Twist::new(-1, -1));
    }

    #[test]
    fn parity() {
        assert!(twist_parity_ok(Twist::new(2, 0)));
        assert!(twist_parity_ok(Twist::new(1, 1)));
        assert!(!twist_parity_ok(Twist::new(1, 0)));
        assert!(!twist_parity_ok(Twist::new(-3, 0)));
    }

    #[test]
    fn path_examples() {
        assert_eq!(plan_twist_path(Twist::ZERO).unwrap(), vec![]);
        assert_eq!(plan_twist_path(Twist::new(2, 0)).unwrap(), vec![Twist::new(2, 0)]);
        assert_eq!(plan_twist_path(Twist::new(3, 1)).unwrap(), vec![Twist::new(1, 1), Twist::new(2, 0)]);
        assert!(matches!(plan_twist_path(Twist::new(1, 0)), Err(FwError::Parity(_))));
    }

    /// Breadth-first search over all step sequences; returns the minimal
    /// length of a decomposition with at most one leading `(1, 1)`.
    fn brute_min_len(target: Twist, max_len: usize) -> Option<usize> {
        let even = [Twist::new(2, 0), Twist::new(-2, 0), Twist::new(0, 2), Twist::new(0, -2)];
        let mut frontier = vec![(Twist::ZERO, false)];
        for len in 0..=max_len {
            if frontier.iter().any(|&(t, _)| t == target) {
                return Some(len);
            }
            let mut next = Vec::new();
            for &(t, used) in &frontier {
                if len == 0 && !used {
                    next.push((t + Twist::new(1, 1), true));
                }
                for s in even {
                    next.push((t + s, used));
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
        None
    }

    #[test]
    fn path_is_minimal_against_exhaustive_search() {
        for p in -4..=4 {
            for q in -4..=4 {
                let t = Twist::new(p, q);
                if !t.parity_ok() {
                    continue;
                }
                let path = plan_twist_path(t).unwrap();
                assert_eq!(Some(path.len()), brute_min_len(t, 8), "target {t:?}");
            }
        }
    }
}
