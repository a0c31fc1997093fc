//! Subsets of a variable universe, stored as bitmasks over declaration order.

use std::fmt;

use thiserror::Error;

/// Largest universe any profile, elemental list or proof context may use.
pub const MAX_VARS: usize = 16;

/// A subset of variable indices `0..n`, bit `i` standing for variable `i`.
///
/// The universe size is carried by the surrounding [`Universe`] or profile;
/// the set itself is just the mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VarSet(bits)
    }

    pub fn singleton(i: usize) -> Self {
        VarSet(1 << i)
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VarSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> VarSet {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> VarSet {
        VarSet(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> VarSet {
        VarSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> VarSet {
        VarSet(self.0 & !(1 << i))
    }

    pub fn is_subset_of(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Index of the highest member plus one; 0 for the empty set.
    pub fn span(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// All subsets, the empty set first, in increasing mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    pub fn nonempty_subsets(self) -> impl Iterator<Item = VarSet> {
        self.subsets().skip(1)
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub struct Subsets {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Subsets {
    type Item = VarSet;

    fn next(&mut self) -> Option<VarSet> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some((current.wrapping_sub(self.mask)) & self.mask)
        };
        Some(VarSet(current))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("universe must have between 1 and {MAX_VARS} variables, got {0}")]
    Size(usize),
    #[error("duplicate variable label `{0}`")]
    Duplicate(String),
    #[error("invalid variable label `{0}`")]
    InvalidLabel(String),
    #[error("unknown variable `{0}`")]
    Unknown(String),
}

/// Ordered variable labels; position in the list is the bit index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    names: Vec<String>,
}

pub fn is_valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(UniverseError::Size(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if !is_valid_label(name) {
                return Err(UniverseError::InvalidLabel(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(UniverseError::Duplicate(name.clone()));
            }
        }
        Ok(Universe { names })
    }

    /// `X0, X1, ..` for callers that only know the size.
    pub fn indexed(n: usize) -> Result<Self, UniverseError> {
        Universe::new((0..n).map(|i| format!("X{i}")))
    }

    /// Parses `X,Y,A` or `X Y A`.
    pub fn parse_list(text: &str) -> Result<Self, UniverseError> {
        Universe::new(text.split([',', ' ', '\t']).filter(|s| !s.is_empty()))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index(label).is_some()
    }

    pub fn full(&self) -> VarSet {
        VarSet::full(self.len())
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VarSet, UniverseError> {
        labels.iter().try_fold(VarSet::EMPTY, |acc, l| {
            let l = l.as_ref();
            self.index(l)
                .map(|i| acc.with(i))
                .ok_or_else(|| UniverseError::Unknown(l.to_string()))
        })
    }

    /// Parses a comma separated label list; the empty string is the empty set.
    pub fn parse_set(&self, text: &str) -> Result<VarSet, UniverseError> {
        let labels: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        self.set_of(&labels)
    }

    /// Labels joined with commas, in declaration order.
    pub fn format_set(&self, set: VarSet) -> String {
        set.indices()
            .map(|i| self.names[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn with_var(&self, label: &str) -> Result<Universe, UniverseError> {
        let mut names = self.names.clone();
        names.push(label.to_string());
        Universe::new(names)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe({})", self.names.join(","))
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}
