use std::ops::Range;

use serde::{Deserialize, Serialize};

/// Dipole groups in their fixed storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    T,
    R,
    E,
    S,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::T, Group::R, Group::E, Group::S];

    fn slot(self) -> usize {
        match self {
            Group::T => 0,
            Group::R => 1,
            Group::E => 2,
            Group::S => 3,
        }
    }
}

/// Offsets of the contiguous T, R, E, S blocks inside an N×N matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockIndexMap {
    lens: [usize; 4],
}

impl BlockIndexMap {
    pub fn new(n_t: usize, n_r: usize, n_e: usize, n_s: usize) -> Self {
        Self {
            lens: [n_t, n_r, n_e, n_s],
        }
    }

    pub fn len(&self, g: Group) -> usize {
        self.lens[g.slot()]
    }

    pub fn offset(&self, g: Group) -> usize {
        self.lens[..g.slot()].iter().sum()
    }

    pub fn range(&self, g: Group) -> Range<usize> {
        let o = self.offset(g);
        o..o + self.len(g)
    }

    pub fn indices(&self, g: Group) -> Vec<usize> {
        self.range(g).collect()
    }

    /// Concatenated indices of several groups, in the order given.
    pub fn indices_of(&self, groups: &[Group]) -> Vec<usize> {
        groups.iter().flat_map(|&g| self.range(g)).collect()
    }

    pub fn total(&self) -> usize {
        self.lens.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contiguous_ordering() {
        let b = BlockIndexMap::new(2, 1, 3, 4);
        assert_eq!(b.range(Group::T), 0..2);
        assert_eq!(b.range(Group::R), 2..3);
        assert_eq!(b.range(Group::E), 3..6);
        assert_eq!(b.range(Group::S), 6..10);
        assert_eq!(b.total(), 10);
        assert_eq!(b.indices_of(&[Group::R, Group::T]), vec![2, 0, 1]);
    }
}
