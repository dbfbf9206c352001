use std::ops::{Mul, Neg};

/// A sign `±1`, used for the Koszul-type signs of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^exponent`; negative exponents are allowed.
    pub fn pow(exponent: i64) -> Sign {
        if exponent.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers() {
        assert_eq!(Sign::pow(0), Sign::Plus);
        assert_eq!(Sign::pow(3), Sign::Minus);
        assert_eq!(Sign::pow(-1), Sign::Minus);
        assert_eq!(Sign::pow(-2), Sign::Plus);
        assert_eq!(-Sign::Plus * Sign::Minus, Sign::Plus);
    }
}
