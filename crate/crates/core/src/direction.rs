use std::fmt;

use crate::symbol::{reserved, Symbol};

/// The two reserved direction constants `l` and `r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Left, Direction::Right];

    pub fn symbol(self) -> Symbol {
        match self {
            Direction::Left => reserved::left(),
            Direction::Right => reserved::right(),
        }
    }

    pub fn from_symbol(sym: Symbol) -> Option<Direction> {
        if sym == reserved::left() {
            Some(Direction::Left)
        } else if sym == reserved::right() {
            Some(Direction::Right)
        } else {
            None
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "l",
            Direction::Right => "r",
        })
    }
}
