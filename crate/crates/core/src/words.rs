//! Words in a finitely generated free group: parsing, free reduction,
//! inversion.
//!
//! The text format writes generator `i` as the `i`-th lowercase letter and its
//! inverse as the corresponding uppercase letter, so `"abA"` is
//! `a · b · a^-1`. The format caps the rank at 26; the types themselves accept
//! any finite rank.

use std::fmt;

use thiserror::Error;

/// A two-element sign, used for letter orientation, permutation parity and
/// the gadget sign choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One occurrence of a generator (`Sign::Plus`) or its inverse
/// (`Sign::Minus`). Generator indices are 1-based: valid indices for a group
/// of rank `r` are `1..=r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    index: usize,
    sign: Sign,
}

impl Letter {
    /// Panics if `index` is zero; indices are 1-based.
    pub fn new(index: usize, sign: Sign) -> Letter {
        assert!(index >= 1, "generator indices are 1-based");
        Letter { index, sign }
    }

    pub fn index(self) -> usize {
        self.index
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index <= 26 {
            let base = match self.sign {
                Sign::Plus => b'a',
                Sign::Minus => b'A',
            };
            write!(f, "{}", (base + (self.index - 1) as u8) as char)
        } else {
            // Out of range for the letter format; rare, but Display cannot fail.
            match self.sign {
                Sign::Plus => write!(f, "<{}>", self.index),
                Sign::Minus => write!(f, "<-{}>", self.index),
            }
        }
    }
}

/// A freely reduced word. The representation never contains an adjacent
/// letter/inverse pair, so equality of `Word` values is equality in the free
/// group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The identity element.
    pub fn empty() -> Word {
        Word::default()
    }

    /// Freely reduces a letter sequence. This is the only constructor, so
    /// every `Word` is reduced.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut stack: Vec<Letter> = Vec::new();
        for letter in letters {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word { letters: stack }
    }

    /// Parses the letter format, rejecting characters outside `a..z`/`A..Z`
    /// and letters that name a generator beyond `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Word, ParseError> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, character) in text.chars().enumerate() {
            let (index, sign) = if character.is_ascii_lowercase() {
                (character as usize - 'a' as usize + 1, Sign::Plus)
            } else if character.is_ascii_uppercase() {
                (character as usize - 'A' as usize + 1, Sign::Minus)
            } else {
                return Err(ParseError::InvalidCharacter {
                    position,
                    character,
                });
            };
            if index > rank {
                return Err(ParseError::GeneratorOutOfRange {
                    position,
                    character,
                    index,
                    rank,
                });
            }
            letters.push(Letter::new(index, sign));
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The group inverse: reverse the letters and flip every sign. The result
    /// of inverting a reduced word is already reduced.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .chain(other.letters.iter())
                .copied(),
        )
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.letters {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid character {character:?} at position {position}")]
    InvalidCharacter { position: usize, character: char },
    #[error(
        "letter {character:?} at position {position} names generator {index}, but the rank is {rank}"
    )]
    GeneratorOutOfRange {
        position: usize,
        character: char,
        index: usize,
        rank: usize,
    },
}
