//! Odd Łukasiewicz paths, their statistics, and the canonical bijection with
//! noncrossing even set partitions.

use super::partitions::SetPartition;
use super::CombinError;

/// Hard ceiling on `k` for enumerating paths of length `2k`.
pub const MAX_PATH_HALF_LENGTH: usize = 7;

/// A Łukasiewicz path of length `n`, stored as the rise of each step: step
/// `i` is `(1, rises[i])` with `rises[i] >= -1`. The path starts and ends at
/// height 0 and never dips below the axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LukPath {
    rises: Vec<i32>,
}

impl LukPath {
    pub fn from_rises(rises: Vec<i32>) -> Result<LukPath, CombinError> {
        let mut height: i64 = 0;
        for (i, &r) in rises.iter().enumerate() {
            if r < -1 {
                return Err(CombinError::InvalidPathStep { position: i });
            }
            height += r as i64;
            if height < 0 {
                return Err(CombinError::PathBelowAxis { position: i });
            }
        }
        if height != 0 {
            return Err(CombinError::PathDoesNotReturn);
        }
        Ok(LukPath { rises })
    }

    pub fn len(&self) -> usize {
        self.rises.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rises.is_empty()
    }

    pub fn rises(&self) -> &[i32] {
        &self.rises
    }

    /// Heights of the `len + 1` lattice points, endpoints included.
    pub fn height_profile(&self) -> Vec<i64> {
        let mut hs = Vec::with_capacity(self.rises.len() + 1);
        let mut h = 0i64;
        hs.push(h);
        for &r in &self.rises {
            h += r as i64;
            hs.push(h);
        }
        hs
    }

    /// All rises odd (up steps `(1, 2s-1)`, down steps `(1,-1)`).
    pub fn is_odd_path(&self) -> bool {
        self.rises.iter().all(|r| r.rem_euclid(2) == 1)
    }

    pub fn stats(&self) -> PathStats {
        let mut down_from_height = std::collections::BTreeMap::new();
        let mut up_count_by_rise = std::collections::BTreeMap::new();
        let mut up_steps = 0usize;
        let mut down_steps = 0usize;
        let mut height_sum: i64 = 0;
        let mut h: i64 = 0;
        for &r in &self.rises {
            if r == -1 {
                *down_from_height.entry(h as usize).or_insert(0) += 1;
                down_steps += 1;
            } else {
                *up_count_by_rise.entry(r as usize).or_insert(0) += 1;
                up_steps += 1;
            }
            h += r as i64;
            height_sum += h;
        }
        // The starting vertex contributes height 0.
        PathStats {
            down_from_height,
            up_count_by_rise,
            up_steps,
            down_steps,
            vertex_height_sum: height_sum as usize,
        }
    }
}

/// Step and vertex statistics of a path, as consumed by the weighted sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStats {
    /// `down_from_height[h]` = number of down steps starting at height `h`.
    pub down_from_height: std::collections::BTreeMap<usize, usize>,
    /// `up_count_by_rise[j]` = number of up steps `(1, j)`.
    pub up_count_by_rise: std::collections::BTreeMap<usize, usize>,
    pub up_steps: usize,
    pub down_steps: usize,
    /// Sum of the heights of all `len + 1` lattice points.
    pub vertex_height_sum: usize,
}

/// All odd Łukasiewicz paths of length `2k`, lexicographic by rise vector.
pub fn enumerate_luk_odd(two_k: usize) -> Result<Vec<LukPath>, CombinError> {
    if two_k % 2 != 0 {
        return Err(CombinError::OddSizeForEvenClass { n: two_k });
    }
    let k = two_k / 2;
    if k == 0 || k > MAX_PATH_HALF_LENGTH {
        return Err(CombinError::SizeOutOfRange {
            n: k,
            max: MAX_PATH_HALF_LENGTH,
        });
    }
    let mut out = Vec::new();
    let mut rises = Vec::with_capacity(two_k);
    fn go(rises: &mut Vec<i32>, h: i64, len: usize, out: &mut Vec<LukPath>) {
        if rises.len() == len {
            if h == 0 {
                out.push(LukPath {
                    rises: rises.clone(),
                });
            }
            return;
        }
        let remaining = (len - rises.len()) as i64;
        // Reaching 0 requires h <= remaining after this step.
        let mut r: i64 = -1;
        while h + r <= remaining - 1 {
            if h + r >= 0 {
                rises.push(r as i32);
                go(rises, h + r, len, out);
                rises.pop();
            }
            r += 2; // odd rises only: -1, 1, 3, ...
        }
    }
    go(&mut rises, 0, two_k, &mut out);
    Ok(out)
}

/// Canonical bijection: the `m`-th step of the image path is `(1, |B|-1)`
/// when `m` is the minimum of block `B`, and `(1, -1)` otherwise. Requires a
/// noncrossing partition.
pub fn nc_to_path(pi: &SetPartition) -> Result<LukPath, CombinError> {
    if !pi.is_noncrossing() {
        return Err(CombinError::NotNoncrossing);
    }
    let n = pi.size();
    let mut rises = vec![-1i32; n];
    for block in pi.blocks() {
        let min = block[0];
        rises[min - 1] = block.len() as i32 - 1;
    }
    LukPath::from_rises(rises)
}

/// Inverse of [`nc_to_path`]: an up step `(1, j)` at position `m` opens a
/// block with minimum `m` and `j` further elements; each down step joins the
/// most recently opened block that still has room.
pub fn path_to_nc(path: &LukPath) -> Result<SetPartition, CombinError> {
    let n = path.len();
    let mut owner = vec![0u8; n];
    let mut stack: Vec<(u8, i32)> = Vec::new(); // (block id, remaining slots)
    let mut next_block: u8 = 0;
    for (i, &r) in path.rises().iter().enumerate() {
        if r >= 0 {
            owner[i] = next_block;
            if r > 0 {
                stack.push((next_block, r));
            }
            next_block += 1;
        } else {
            let (b, left) = stack.pop().ok_or(CombinError::PathBelowAxis { position: i })?;
            owner[i] = b;
            if left > 1 {
                stack.push((b, left - 1));
            }
        }
    }
    if !stack.is_empty() {
        return Err(CombinError::PathDoesNotReturn);
    }
    SetPartition::from_rgs(owner.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::partitions::{enumerate_nc_even, SetPartition};

    #[test]
    fn single_path_of_length_two() {
        let paths = enumerate_luk_odd(2).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].rises(), &[1, -1]);
    }

    #[test]
    fn counts_match_nc_even() {
        for k in 1..=5 {
            let paths = enumerate_luk_odd(2 * k).unwrap();
            let ncs = enumerate_nc_even(2 * k).unwrap();
            assert_eq!(paths.len(), ncs.len(), "k = {k}");
        }
        assert_eq!(enumerate_luk_odd(4).unwrap().len(), 3);
    }

    #[test]
    fn four_paths_with_two_big_rises() {
        let paths = enumerate_luk_odd(6).unwrap();
        let with_two_threes: Vec<_> = paths
            .iter()
            .filter(|p| p.rises().iter().filter(|&&r| r == 3).count() == 2)
            .collect();
        assert_eq!(with_two_threes.len(), 4);
    }

    #[test]
    fn bijection_examples() {
        // {12|34} -> (1,-1,1,-1)
        let p = SetPartition::from_blocks(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(nc_to_path(&p).unwrap().rises(), &[1, -1, 1, -1]);
        // {1234} -> (3,-1,-1,-1)
        let p = SetPartition::from_blocks(4, &[vec![1, 2, 3, 4]]).unwrap();
        assert_eq!(nc_to_path(&p).unwrap().rises(), &[3, -1, -1, -1]);
        // Crossing partition is rejected.
        let p = SetPartition::from_blocks(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert!(nc_to_path(&p).is_err());
    }

    #[test]
    fn round_trip_on_nc_even_six() {
        let ncs = enumerate_nc_even(6).unwrap();
        assert_eq!(ncs.len(), 12);
        for pi in &ncs {
            let path = nc_to_path(pi).unwrap();
            assert!(path.is_odd_path());
            assert_eq!(&path_to_nc(&path).unwrap(), pi);
        }
    }

    #[test]
    fn stats_examples() {
        let p = LukPath::from_rises(vec![1, -1]).unwrap();
        let st = p.stats();
        assert_eq!(st.down_from_height.get(&1), Some(&1));
        assert_eq!(st.up_count_by_rise.get(&1), Some(&1));
        assert_eq!(st.vertex_height_sum, 1);

        let p = LukPath::from_rises(vec![3, -1, -1, -1]).unwrap();
        let st = p.stats();
        assert_eq!(st.down_from_height.get(&3), Some(&1));
        assert_eq!(st.down_from_height.get(&2), Some(&1));
        assert_eq!(st.down_from_height.get(&1), Some(&1));
        assert_eq!(st.vertex_height_sum, 6);

        let p = LukPath::from_rises(vec![1, -1, 1, -1]).unwrap();
        let st = p.stats();
        assert_eq!(st.down_from_height.get(&1), Some(&2));
        assert_eq!(st.vertex_height_sum, 2);
    }

    #[test]
    fn invalid_paths_rejected() {
        assert!(LukPath::from_rises(vec![-1, 1]).is_err());
        assert!(LukPath::from_rises(vec![1, 1]).is_err());
        assert!(LukPath::from_rises(vec![1, -2]).is_err());
    }
}
