//! Bitmask sets of players.

use std::fmt;

/// Largest team the bitmask representation can hold.
pub const MAX_PLAYERS: usize = 64;

/// A subset of the team, one bit per player index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlayerSet(u64);

impl PlayerSet {
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PlayerSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The whole team `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_PLAYERS,
            "team of {n} players exceeds {MAX_PLAYERS}"
        );
        if n == MAX_PLAYERS {
            PlayerSet(u64::MAX)
        } else {
            PlayerSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        assert!(player < MAX_PLAYERS, "player index {player} out of range");
        PlayerSet(1u64 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        players
            .into_iter()
            .fold(PlayerSet::EMPTY, |acc, p| acc.with(p))
    }

    pub fn with(self, player: usize) -> Self {
        self.union(PlayerSet::singleton(player))
    }

    pub fn without(self, player: usize) -> Self {
        self.difference(PlayerSet::singleton(player))
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, player: usize) -> bool {
        player < MAX_PLAYERS && self.0 & (1u64 << player) != 0
    }

    pub const fn union(self, other: PlayerSet) -> Self {
        PlayerSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: PlayerSet) -> Self {
        PlayerSet(self.0 & other.0)
    }

    pub const fn difference(self, other: PlayerSet) -> Self {
        PlayerSet(self.0 & !other.0)
    }

    /// Complement relative to a team of `n` players.
    pub fn complement(self, n: usize) -> Self {
        PlayerSet::full(n).difference(self)
    }

    pub const fn is_disjoint(self, other: PlayerSet) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn is_subset(self, other: PlayerSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when no bit at or above `n` is set.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(PlayerSet::full(n))
    }

    /// Member indices in ascending order.
    pub fn players(self) -> Players {
        Players(self.0)
    }

    /// All subsets of `self` (including the empty set and `self`) in ascending mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Nonempty subsets of `self` in ascending mask order.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = PlayerSet> {
        self.subsets().skip(1)
    }

    /// Index into a table of `2^n` entries.
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.players()).finish()
    }
}

impl fmt::Display for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.players().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over the members of a [`PlayerSet`].
#[derive(Clone, Debug)]
pub struct Players(u64);

impl Iterator for Players {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Players {}

/// Ascending enumeration of the submasks of a fixed universe.
#[derive(Clone, Debug)]
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = PlayerSet;

    fn next(&mut self) -> Option<PlayerSet> {
        let cur = self.next?;
        // (cur - universe) & universe steps to the next submask in increasing order.
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(PlayerSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_ascending_and_complete() {
        let u = PlayerSet::from_players([0, 2, 3]);
        let subs: Vec<u64> = u.subsets().map(PlayerSet::bits).collect();
        assert_eq!(subs, vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(PlayerSet::EMPTY.subsets().count(), 1);
        assert_eq!(PlayerSet::full(5).nonempty_subsets().count(), 31);
    }

    #[test]
    fn full_team_of_64() {
        let t = PlayerSet::full(64);
        assert_eq!(t.len(), 64);
        assert!(t.contains(63));
        assert_eq!(t.complement(64), PlayerSet::EMPTY);
    }

    #[test]
    fn set_algebra() {
        let a = PlayerSet::from_players([0, 1]);
        let b = PlayerSet::from_players([1, 2]);
        assert_eq!(a.union(b), PlayerSet::from_players([0, 1, 2]));
        assert_eq!(a.intersection(b), PlayerSet::singleton(1));
        assert_eq!(a.difference(b), PlayerSet::singleton(0));
        assert!(!a.is_disjoint(b));
        assert!(a.is_subset(PlayerSet::full(2)));
        assert!(!b.fits(2));
        assert_eq!(a.complement(4), PlayerSet::from_players([2, 3]));
        assert_eq!(format!("{}", b), "{1,2}");
        assert_eq!(b.players().collect::<Vec<_>>(), vec![1, 2]);
    }
}
