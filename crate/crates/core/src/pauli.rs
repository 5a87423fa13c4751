use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::Error;

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    /// Whether the operator flips the computational basis state.
    pub fn flips(self) -> bool {
        !matches!(self, PauliAxis::Z)
    }

    /// Dense 2x2 matrix, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliAxis::X => [[o, one], [one, o]],
            PauliAxis::Y => [[o, -i], [i, o]],
            PauliAxis::Z => [[one, o], [o, -one]],
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl TryFrom<char> for PauliAxis {
    type Error = Error;

    fn try_from(c: char) -> Result<Self, Error> {
        match c.to_ascii_lowercase() {
            'x' => Ok(PauliAxis::X),
            'y' => Ok(PauliAxis::Y),
            'z' => Ok(PauliAxis::Z),
            other => Err(Error::InvalidArgument(format!("unknown Pauli axis '{other}'"))),
        }
    }
}

impl FromStr for PauliAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut chars = s.trim().chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => PauliAxis::try_from(c),
            _ => Err(Error::InvalidArgument(format!("unknown Pauli axis '{s}'"))),
        }
    }
}

/// An ordered pair of axes, written `xy` for (X on the first qubit, Y on the second).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisPair(pub PauliAxis, pub PauliAxis);

impl AxisPair {
    /// All nine pairs in `xx, xy, xz, yx, ...` order.
    pub fn all() -> Vec<AxisPair> {
        PauliAxis::ALL
            .iter()
            .flat_map(|&a| PauliAxis::ALL.iter().map(move |&b| AxisPair(a, b)))
            .collect()
    }
}

impl fmt::Display for AxisPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0, self.1)
    }
}

impl FromStr for AxisPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut chars = s.chars();
        match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => Ok(AxisPair(a.try_into()?, b.try_into()?)),
            _ => Err(Error::InvalidArgument(format!("axis pair must be two letters, got '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_pairs() {
        assert_eq!("xz".parse::<AxisPair>().unwrap(), AxisPair(PauliAxis::X, PauliAxis::Z));
        assert_eq!("YY".parse::<AxisPair>().unwrap(), AxisPair(PauliAxis::Y, PauliAxis::Y));
        assert!("xw".parse::<AxisPair>().is_err());
        assert!("xyz".parse::<AxisPair>().is_err());
        assert_eq!(AxisPair::all().len(), 9);
        assert_eq!(AxisPair::all()[5].to_string(), "yz");
    }
}
