use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Geometric label of a physical qubit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Qubit {
    /// Qubit on a vertex (0-cell) of the source lattice.
    Vertex(usize),
    /// Qubit on an edge (1-cell) of the source lattice.
    Edge(usize),
    /// Ancilla number `k` attached to the d-cell `cell`.
    Ancilla { cell: usize, k: usize },
    /// Plain positional index.
    Index(usize),
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Vertex(v) => write!(f, "v{v}"),
            Self::Edge(e) => write!(f, "e{e}"),
            Self::Ancilla { cell, k } => write!(f, "a{cell}.{k}"),
            Self::Index(i) => write!(f, "q{i}"),
        }
    }
}

impl FromStr for Qubit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad qubit label `{s}`"));
        let (tag, rest) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        match tag {
            "v" => Ok(Self::Vertex(num(rest)?)),
            "e" => Ok(Self::Edge(num(rest)?)),
            "q" => Ok(Self::Index(num(rest)?)),
            "a" => {
                let (c, k) = rest.split_once('.').ok_or_else(bad)?;
                Ok(Self::Ancilla {
                    cell: num(c)?,
                    k: num(k)?,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl Serialize for Qubit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Qubit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_roundtrip() {
        for q in [
            Qubit::Vertex(3),
            Qubit::Edge(12),
            Qubit::Ancilla { cell: 4, k: 2 },
            Qubit::Index(0),
        ] {
            assert_eq!(q.to_string().parse::<Qubit>().unwrap(), q);
        }
        assert!("x1".parse::<Qubit>().is_err());
        assert!("a1".parse::<Qubit>().is_err());
    }
}
