//! Bijective base-k numeration: positional notation with digits `1..=k` and
//! no zero. In base 9, 104 is written `125` (1·81 + 2·9 + 5).
//!
//! Digit values render as `1`-`9`, then `A`-`Z` for 10..=35. Base 36 needs a
//! 36th glyph for its top digit, which renders as `#`. Decoding accepts
//! letters in either case; `0` is never a legal digit.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const MIN_BASE: u32 = 2;
pub const MAX_BASE: u32 = 36;

const TOP_DIGIT_36: char = '#';

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BijectiveError {
    #[error("only positive integers have a bijective representation, got {0}")]
    DomainError(i64),
    #[error("base {0} is outside 2..=36")]
    BaseOutOfRange(u32),
    #[error("invalid digit {digit:?} at position {position} for base {base}")]
    InvalidDigit {
        digit: char,
        position: usize,
        base: u32,
    },
    #[error("empty digit string")]
    EmptyInput,
    #[error("value does not fit in a signed 64-bit integer")]
    Overflow,
}

impl BijectiveError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::DomainError(_) => "DomainError",
            Self::BaseOutOfRange(_) => "BaseOutOfRange",
            Self::InvalidDigit { .. } => "InvalidDigit",
            Self::EmptyInput => "EmptyInput",
            Self::Overflow => "Overflow",
        }
    }
}

/// A bijective numeral: most significant digit first, every digit in `1..=base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BijectiveDigits {
    base: u32,
    digits: Vec<u8>,
}

impl BijectiveDigits {
    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn value(&self) -> Result<i64, BijectiveError> {
        self.digits.iter().try_fold(0i64, |acc, &d| {
            acc.checked_mul(i64::from(self.base))
                .and_then(|v| v.checked_add(i64::from(d)))
                .ok_or(BijectiveError::Overflow)
        })
    }
}

impl fmt::Display for BijectiveDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.digits
            .iter()
            .try_for_each(|&d| write!(f, "{}", digit_char(d)))
    }
}

fn check_base(base: u32) -> Result<(), BijectiveError> {
    if (MIN_BASE..=MAX_BASE).contains(&base) {
        Ok(())
    } else {
        Err(BijectiveError::BaseOutOfRange(base))
    }
}

fn digit_char(d: u8) -> char {
    match d {
        1..=9 => char::from(b'0' + d),
        10..=35 => char::from(b'A' + d - 10),
        _ => TOP_DIGIT_36,
    }
}

fn char_digit(c: char) -> Option<u8> {
    match c {
        '1'..='9' => Some(c as u8 - b'0'),
        'A'..='Z' => Some(c as u8 - b'A' + 10),
        'a'..='z' => Some(c as u8 - b'a' + 10),
        TOP_DIGIT_36 => Some(36),
        _ => None,
    }
}

pub fn to_bijective(n: i64, base: u32) -> Result<BijectiveDigits, BijectiveError> {
    check_base(base)?;
    if n < 1 {
        return Err(BijectiveError::DomainError(n));
    }
    let k = base as u64;
    let mut rest = n as u64;
    let mut digits = Vec::new();
    while rest > 0 {
        let r = rest % k;
        if r == 0 {
            digits.push(base as u8);
            rest = rest / k - 1;
        } else {
            digits.push(r as u8);
            rest /= k;
        }
    }
    digits.reverse();
    Ok(BijectiveDigits { base, digits })
}

pub fn from_bijective(s: &str, base: u32) -> Result<i64, BijectiveError> {
    check_base(base)?;
    if s.is_empty() {
        return Err(BijectiveError::EmptyInput);
    }
    let digits = s
        .chars()
        .enumerate()
        .map(|(position, c)| match char_digit(c) {
            Some(d) if u32::from(d) <= base => Ok(d),
            _ => Err(BijectiveError::InvalidDigit {
                digit: c,
                position,
                base,
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    BijectiveDigits { base, digits }.value()
}

/// Renders `n` in bijective base `base` as text.
pub fn encode(n: i64, base: u32) -> Result<String, BijectiveError> {
    to_bijective(n, base).map(|d| alloc::format!("{d}"))
}
