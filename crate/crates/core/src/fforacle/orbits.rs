use std::time::Instant;

use serde::Serialize;

use super::flags::{Budget, FlagSet};
use super::group::MatrixGroupInstance;
use crate::error::{Error, Result};

/// Orbit statistics of a group acting on a flag set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub q: u32,
    pub points: usize,
    pub orbits: usize,
    /// Ascending.
    pub sizes: Vec<usize>,
}

fn find(parent: &mut [u32], mut i: u32) -> u32 {
    let mut root = i;
    while parent[root as usize] != root {
        root = parent[root as usize];
    }
    while parent[i as usize] != root {
        let next = parent[i as usize];
        parent[i as usize] = root;
        i = next;
    }
    root
}

/// For every flag, the smallest index in its orbit.
pub fn orbit_partition(group: &MatrixGroupInstance, flags: &FlagSet, budget: &Budget) -> Result<Vec<u32>> {
    if group.field != flags.field || group.dimension != flags.dimension {
        return Err(Error::BadEmbedding(format!("{} acts on a different space", group.label)));
    }
    let clock = Instant::now();
    let n = flags.len();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut s = flags.scratch();
    for (k, g) in group.generators.iter().enumerate() {
        for i in 0..n {
            flags.image(g, flags.key(i), &mut s);
            let Some(j) = flags.position(&s.out) else {
                return Err(Error::BadEmbedding(format!("generator {k} of {} leaves the flag set", group.label)));
            };
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j as u32));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
        budget.check_time(clock, "orbit count")?;
    }
    Ok((0..n as u32).map(|i| find(&mut parent, i)).collect())
}

/// Counts the orbits of `group` on `flags`.
pub fn count_orbits(group: &MatrixGroupInstance, flags: &FlagSet, budget: &Budget) -> Result<OrbitReport> {
    let labels = orbit_partition(group, flags, budget)?;
    let mut sizes = vec![0usize; labels.len()];
    for &l in &labels {
        sizes[l as usize] += 1;
    }
    let mut sizes: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    sizes.sort_unstable();
    Ok(OrbitReport {
        q: flags.field.q() as u32,
        points: flags.len(),
        orbits: sizes.len(),
        sizes,
    })
}
