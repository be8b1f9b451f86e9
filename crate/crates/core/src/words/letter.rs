use std::cmp::Ordering;
use std::fmt;

/// A generator or inverse generator of a free group.
///
/// Generator index 0 is the auxiliary letter `z`; ordinary basis letters are
/// numbered from 1, so adjoining `z` never renumbers them.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: u32, positive: bool) -> Letter {
        let v = index as i32 + 1;
        Letter(if positive { v } else { -v })
    }

    /// Positive basis letter `x_index`, `index >= 1`.
    pub fn generator(index: u32) -> Letter {
        debug_assert!(index >= 1);
        Letter::new(index, true)
    }

    pub fn z() -> Letter {
        Letter::new(0, true)
    }

    pub fn index(self) -> u32 {
        (self.0.unsigned_abs()) - 1
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_z(self) -> bool {
        self.index() == 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// The positive letter with the same index.
    pub fn positive(self) -> Letter {
        Letter(self.0.abs())
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index()
            .cmp(&other.index())
            .then_with(|| other.is_positive().cmp(&self.is_positive()))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.index(), self.is_positive()) {
            (0, true) => write!(f, "z"),
            (0, false) => write!(f, "Z"),
            (i, true) if i <= 25 => write!(f, "{}", (b'a' + i as u8 - 1) as char),
            (i, false) if i <= 25 => write!(f, "{}", (b'A' + i as u8 - 1) as char),
            (i, true) => write!(f, "x{i}"),
            (i, false) => write!(f, "X{i}"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The basis of a free group: `x_1..x_rank`, optionally with `z` adjoined.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub rank: u32,
    pub with_z: bool,
}

impl Alphabet {
    pub fn new(rank: u32) -> Alphabet {
        Alphabet { rank, with_z: false }
    }

    pub fn with_z(self) -> Alphabet {
        Alphabet { rank: self.rank, with_z: true }
    }

    /// Number of free generators.
    pub fn size(&self) -> usize {
        self.rank as usize + usize::from(self.with_z)
    }

    /// Positive generators in slot order (`z` first when present).
    pub fn generators(&self) -> impl Iterator<Item = Letter> + '_ {
        let z = self.with_z.then(Letter::z);
        z.into_iter().chain((1..=self.rank).map(Letter::generator))
    }

    /// All signed letters in letter order.
    pub fn letters(&self) -> Vec<Letter> {
        self.generators()
            .flat_map(|g| [g, g.inverse()])
            .collect()
    }

    pub fn generator(&self, slot: usize) -> Letter {
        if self.with_z {
            Letter::new(slot as u32, true)
        } else {
            Letter::generator(slot as u32 + 1)
        }
    }

    /// Position of the letter's generator in `generators()`.
    pub fn slot(&self, letter: Letter) -> Option<usize> {
        let i = letter.index();
        match (i, self.with_z) {
            (0, true) => Some(0),
            (0, false) => None,
            (i, _) if i > self.rank => None,
            (i, true) => Some(i as usize),
            (i, false) => Some(i as usize - 1),
        }
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.slot(letter).is_some()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.with_z {
            write!(f, "rank {} + z", self.rank)
        } else {
            write!(f, "rank {}", self.rank)
        }
    }
}
