//! The `ZoT` universe: an ordered list of cells whose contents can be rebound,
//! stacked, inserted and erased independently of the numeral each cell was
//! created as.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest number of cells `Universe::from_range` will create.
pub const MAX_RANGE_CELLS: i128 = 1_000_000;

/// Default depth limit for [`ResolutionPolicy::Chase`].
pub const DEFAULT_CHASE_DEPTH: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniverseError {
    #[error("range is inverted: {lo} > {hi}")]
    RangeInverted { lo: i64, hi: i64 },
    #[error("range {lo}..{hi} exceeds {MAX_RANGE_CELLS} cells")]
    RangeTooLarge { lo: i64, hi: i64 },
    #[error("no cell carries the label {0}")]
    UnknownLabel(i64),
    #[error("cannot stack an empty list of values")]
    EmptyStack,
    #[error("index {index} is out of bounds for a universe of {len} cells")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("invalid opaque name {0:?}: expected [a-z][a-z0-9]*")]
    InvalidOpaqueName(String),
    #[error("rebinding cycle through label {0}")]
    CycleDetected(i64),
    #[error("chase exceeded the maximum depth of {0} lookups")]
    ChaseDepthExceeded(u32),
}

impl UniverseError {
    /// Short identifier used in diagnostics, e.g. `UnknownLabel`.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::RangeInverted { .. } => "RangeInverted",
            Self::RangeTooLarge { .. } => "RangeTooLarge",
            Self::UnknownLabel(_) => "UnknownLabel",
            Self::EmptyStack => "EmptyStack",
            Self::IndexOutOfBounds { .. } => "IndexOutOfBounds",
            Self::InvalidOpaqueName(_) => "InvalidOpaqueName",
            Self::CycleDetected(_) => "CycleDetected",
            Self::ChaseDepthExceeded(_) => "ChaseDepthExceeded",
        }
    }
}

/// Name of an opaque placeholder symbol such as `q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpaqueName(String);

impl OpaqueName {
    pub fn new(name: &str) -> Result<Self, UniverseError> {
        let mut chars = name.chars();
        let valid = matches!(chars.next(), Some('a'..='z'))
            && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit());
        if valid {
            Ok(Self(name.into()))
        } else {
            Err(UniverseError::InvalidOpaqueName(name.into()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OpaqueName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atom occupying a universe cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Numeral(i64),
    Opaque(OpaqueName),
}

impl Symbol {
    pub fn as_numeral(&self) -> Option<i64> {
        match self {
            Self::Numeral(v) => Some(*v),
            Self::Opaque(_) => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Numeral(v) => write!(f, "{v}"),
            Self::Opaque(name) => write!(f, "{name}"),
        }
    }
}

/// One position of the universe.
///
/// `original_label` is the numeral the cell was created as and never changes;
/// cells inserted later (opaques) have none. `occupants` is never empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    original_label: Option<i64>,
    occupants: Vec<Symbol>,
}

impl Cell {
    fn labeled(label: i64) -> Self {
        Self {
            original_label: Some(label),
            occupants: vec![Symbol::Numeral(label)],
        }
    }

    pub fn original_label(&self) -> Option<i64> {
        self.original_label
    }

    pub fn occupants(&self) -> &[Symbol] {
        &self.occupants
    }

    /// True for a black hole: more than one occupant.
    pub fn is_stacked(&self) -> bool {
        self.occupants.len() > 1
    }
}

/// How numerals are looked up in a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResolutionPolicy {
    /// Exactly one lookup: `3:=7; 7:=2` makes 3 resolve to 7.
    #[default]
    SingleStep,
    /// Follow rebindings transitively: `3:=7; 7:=2` makes 3 resolve to 2.
    Chase { max_depth: u32 },
}

impl ResolutionPolicy {
    pub fn chase() -> Self {
        Self::Chase {
            max_depth: DEFAULT_CHASE_DEPTH,
        }
    }
}

/// Outcome of looking a numeral up in a universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Value(i64),
    OpaqueHit(OpaqueName),
    /// A black-hole cell; occupants in stacking order.
    Multi(Vec<i64>),
}

/// The ordered list of cells that numerals resolve through.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Universe {
    cells: Vec<Cell>,
}

impl Universe {
    /// An empty universe, the state before any `ZoT=(..)` initialization.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds `lo..=hi` with every cell bound to its own label.
    pub fn from_range(lo: i64, hi: i64) -> Result<Self, UniverseError> {
        if lo > hi {
            return Err(UniverseError::RangeInverted { lo, hi });
        }
        if i128::from(hi) - i128::from(lo) >= MAX_RANGE_CELLS {
            return Err(UniverseError::RangeTooLarge { lo, hi });
        }
        Ok(Self {
            cells: (lo..=hi).map(Cell::labeled).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Every occupant of every cell, in display order.
    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.cells.iter().flat_map(|c| c.occupants.iter())
    }

    pub fn position_of_label(&self, label: i64) -> Option<usize> {
        self.cells
            .iter()
            .position(|c| c.original_label == Some(label))
    }

    pub fn has_label(&self, label: i64) -> bool {
        self.position_of_label(label).is_some()
    }

    fn cell_for_label(&mut self, label: i64) -> Result<&mut Cell, UniverseError> {
        let pos = self
            .position_of_label(label)
            .ok_or(UniverseError::UnknownLabel(label))?;
        Ok(&mut self.cells[pos])
    }

    /// `label := value`. The value need not exist in the universe.
    pub fn rebind(&mut self, label: i64, value: i64) -> Result<(), UniverseError> {
        self.cell_for_label(label)?.occupants = vec![Symbol::Numeral(value)];
        Ok(())
    }

    /// Binds the cell labeled `label` to an opaque symbol. Reading that
    /// numeral afterwards is indeterminate. Not reachable from scripts.
    pub fn rebind_opaque(&mut self, label: i64, name: &str) -> Result<(), UniverseError> {
        let name = OpaqueName::new(name)?;
        self.cell_for_label(label)?.occupants = vec![Symbol::Opaque(name)];
        Ok(())
    }

    /// `label := [a, b, c]`: turns the cell into a black hole holding all values.
    pub fn stack(&mut self, label: i64, values: &[i64]) -> Result<(), UniverseError> {
        if values.is_empty() {
            return Err(UniverseError::EmptyStack);
        }
        self.cell_for_label(label)?.occupants =
            values.iter().copied().map(Symbol::Numeral).collect();
        Ok(())
    }

    /// Inserts an unlabeled cell holding the opaque `name` at `index`
    /// (`index == len()` appends).
    pub fn insert_opaque(&mut self, index: usize, name: &str) -> Result<(), UniverseError> {
        if index > self.cells.len() {
            return Err(UniverseError::IndexOutOfBounds {
                index,
                len: self.cells.len(),
            });
        }
        let name = OpaqueName::new(name)?;
        self.cells.insert(
            index,
            Cell {
                original_label: None,
                occupants: vec![Symbol::Opaque(name)],
            },
        );
        Ok(())
    }

    pub fn delete_at(&mut self, index: usize) -> Result<(), UniverseError> {
        if index >= self.cells.len() {
            return Err(UniverseError::IndexOutOfBounds {
                index,
                len: self.cells.len(),
            });
        }
        self.cells.remove(index);
        Ok(())
    }

    /// Contents of the cell labeled `n`, or `None` when no cell carries it.
    fn lookup(&self, n: i64) -> Option<Resolution> {
        let cell = &self.cells[self.position_of_label(n)?];
        if let Some(name) = cell.occupants.iter().find_map(|s| match s {
            Symbol::Opaque(name) => Some(name),
            Symbol::Numeral(_) => None,
        }) {
            return Some(Resolution::OpaqueHit(name.clone()));
        }
        let mut values = cell.occupants.iter().filter_map(Symbol::as_numeral);
        Some(if cell.occupants.len() == 1 {
            Resolution::Value(values.next().unwrap_or(n))
        } else {
            Resolution::Multi(values.collect())
        })
    }

    /// Resolves the numeral `n`. Numerals without a cell resolve to themselves.
    pub fn resolve(&self, n: i64, policy: ResolutionPolicy) -> Result<Resolution, UniverseError> {
        match policy {
            ResolutionPolicy::SingleStep => Ok(self.lookup(n).unwrap_or(Resolution::Value(n))),
            ResolutionPolicy::Chase { max_depth } => self.chase(n, max_depth),
        }
    }

    fn chase(&self, n: i64, max_depth: u32) -> Result<Resolution, UniverseError> {
        let mut visited = BTreeSet::new();
        let mut current = n;
        let mut lookups = 0u32;
        loop {
            if !visited.insert(current) {
                return Err(UniverseError::CycleDetected(current));
            }
            if lookups == max_depth {
                return Err(UniverseError::ChaseDepthExceeded(max_depth));
            }
            lookups += 1;
            match self.lookup(current) {
                None => return Ok(Resolution::Value(current)),
                Some(Resolution::Value(v)) if v == current => return Ok(Resolution::Value(v)),
                Some(Resolution::Value(v)) => current = v,
                Some(other) => return Ok(other),
            }
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, sym) in self.symbols().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}
