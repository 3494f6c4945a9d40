use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An extended integer: finite, `-inf` or `+inf`.
///
/// Supermodular functions take values in `Z ∪ {-inf}`, their submodular
/// complements and the derived minimization objectives in `Z ∪ {+inf}`.
/// Variant order gives `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    NegInf,
    Finite(i128),
    PosInf,
}

impl Ext {
    pub const ZERO: Ext = Ext::Finite(0);

    pub fn finite(self) -> Option<i128> {
        match self {
            Ext::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    /// Multiplies by a nonnegative integer factor; `0 * inf` is `0`.
    pub fn scale(self, k: i128) -> Ext {
        debug_assert!(k >= 0);
        match self {
            Ext::Finite(v) => Ext::Finite(v * k),
            _ if k == 0 => Ext::ZERO,
            other => other,
        }
    }
}

impl From<i128> for Ext {
    fn from(v: i128) -> Self {
        Ext::Finite(v)
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Ext::Finite(v as i128)
    }
}

impl Neg for Ext {
    type Output = Ext;

    fn neg(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::Finite(v) => Ext::Finite(-v),
            Ext::PosInf => Ext::NegInf,
        }
    }
}

impl Add for Ext {
    type Output = Ext;

    /// Panics on `-inf + +inf`, which has no meaning for the set functions here.
    fn add(self, rhs: Ext) -> Ext {
        match (self, rhs) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
            (Ext::NegInf, Ext::PosInf) | (Ext::PosInf, Ext::NegInf) => {
                panic!("indeterminate sum -inf + inf")
            }
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            _ => Ext::PosInf,
        }
    }
}

impl Sub for Ext {
    type Output = Ext;

    fn sub(self, rhs: Ext) -> Ext {
        self + (-rhs)
    }
}

impl Add<i128> for Ext {
    type Output = Ext;

    fn add(self, rhs: i128) -> Ext {
        self + Ext::Finite(rhs)
    }
}

impl Sub<i128> for Ext {
    type Output = Ext;

    fn sub(self, rhs: i128) -> Ext {
        self + Ext::Finite(-rhs)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Finite(v) => write!(f, "{v}"),
            Ext::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Interchange encoding: JSON integers for finite values, the strings "-inf" / "inf" otherwise.
impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Ext::Finite(v) => {
                let v = i64::try_from(*v).map_err(serde::ser::Error::custom)?;
                serializer.serialize_i64(v)
            }
            Ext::NegInf => serializer.serialize_str("-inf"),
            Ext::PosInf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = Ext;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or the string \"-inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ext, E> {
                Ok(Ext::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ext, E> {
                i64::try_from(v).map(Ext::from).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Ext, E> {
                match v {
                    "-inf" => Ok(Ext::NegInf),
                    "inf" | "+inf" => Ok(Ext::PosInf),
                    other => other
                        .parse::<i64>()
                        .map(Ext::from)
                        .map_err(|_| E::custom(format!("invalid extended integer {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
