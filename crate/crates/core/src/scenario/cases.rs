//! Symmetry-reduced placement cases on the eight extreme axes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::extreme::{AxisId, Dihedral};

/// Unordered pair of distinct axes, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AxisPair {
    pub a: AxisId,
    pub b: AxisId,
}

impl AxisPair {
    pub fn new(x: AxisId, y: AxisId) -> Self {
        assert_ne!(x, y, "pair of identical axes");
        if x < y {
            AxisPair { a: x, b: y }
        } else {
            AxisPair { a: y, b: x }
        }
    }

    pub fn transformed(self, g: Dihedral) -> Self {
        AxisPair::new(g.apply_axis(self.a), g.apply_axis(self.b))
    }

    pub fn shares_axis(&self, other: &AxisPair) -> bool {
        [self.a, self.b]
            .iter()
            .any(|x| *x == other.a || *x == other.b)
    }
}

fn all_pairs() -> Vec<AxisPair> {
    let mut out = Vec::with_capacity(28);
    for i in 0..8u8 {
        for j in i + 1..8 {
            out.push(AxisPair::new(AxisId(i), AxisId(j)));
        }
    }
    out
}

/// Orbits of the 28 distinct-axis pairs under the square's symmetry group,
/// each sorted, ordered by their smallest member.
pub fn axis_pair_orbits() -> Vec<Vec<AxisPair>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in all_pairs() {
        if seen.contains(&p) {
            continue;
        }
        let orbit: BTreeSet<AxisPair> = Dihedral::all().iter().map(|&g| p.transformed(g)).collect();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect::<Vec<_>>());
    }
    orbits
}

/// Canonical representative of each Task-2 case.
pub fn task2_cases() -> Vec<AxisPair> {
    axis_pair_orbits().into_iter().map(|o| o[0]).collect()
}

#[cfg(test)]
pub(crate) fn orbit_index(pair: AxisPair) -> usize {
    axis_pair_orbits()
        .iter()
        .position(|o| o.contains(&pair))
        .expect("every pair lies in an orbit")
}

/// A Task-3 case: the symmetry class of the red pair and of the blue pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Task3Case {
    pub id: u32,
    pub red: u8,
    pub blue: u8,
}

/// The 36 Task-3 cases: every (red class, blue class) combination of the six
/// pair classes.
pub fn task3_cases() -> Vec<Task3Case> {
    let n = task2_cases().len() as u8;
    (0..n)
        .flat_map(|red| (0..n).map(move |blue| (red, blue)))
        .enumerate()
        .map(|(id, (red, blue))| Task3Case {
            id: id as u32,
            red,
            blue,
        })
        .collect()
}

/// All concrete (red, blue) placements of a case that use four distinct axes.
pub fn task3_realizations(case: Task3Case) -> Vec<(AxisPair, AxisPair)> {
    let orbits = axis_pair_orbits();
    let reds = &orbits[case.red as usize];
    let blues = &orbits[case.blue as usize];
    let mut out = Vec::new();
    for r in reds {
        for b in blues {
            if !r.shares_axis(b) {
                out.push((*r, *b));
            }
        }
    }
    out
}

/// Number of symmetry classes of complete four-point placements (two
/// disjoint pairs) when the group acts on both pairs jointly. With
/// `colored`, red and blue are distinguishable.
pub fn joint_pair_orbit_count(colored: bool) -> usize {
    let pairs = all_pairs();
    let key = |r: AxisPair, b: AxisPair| if colored || r <= b { (r, b) } else { (b, r) };
    let mut configs = BTreeSet::new();
    for &r in &pairs {
        for &b in &pairs {
            if !r.shares_axis(&b) {
                configs.insert(key(r, b));
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &(r, b) in &configs {
        if seen.contains(&(r, b)) {
            continue;
        }
        count += 1;
        for g in Dihedral::all() {
            seen.insert(key(r.transformed(g), b.transformed(g)));
        }
    }
    count
}
