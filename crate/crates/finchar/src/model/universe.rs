use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Widest universe a `u64` subset mask can index.
pub const MAX_UNIVERSE_SIZE: usize = 63;

/// Default bound on universe sizes for operations that walk all `2^n` subsets.
pub const DEFAULT_CAP: usize = 16;

/// Shared handle to a universe. Every value in the workbench carries one.
pub type UniverseRef = Arc<Universe>;

/// A named finite ground type with elements indexed `0..size`.
///
/// Equality is structural and ignores the display name: two universes are
/// interchangeable exactly when they have the same size and the same shape
/// (atomic / product / bottom-extension), recursively. Names only matter for
/// rendering and for the spec-file format.
#[derive(Debug, Clone)]
pub struct Universe {
    name: String,
    kind: UniverseKind,
    size: usize,
}

#[derive(Debug, Clone)]
pub enum UniverseKind {
    Atomic,
    /// Pairs `(a, b)` flattened row-major: index `a * right.size + b`.
    Product(UniverseRef, UniverseRef),
    /// Base elements keep their indices; the extra bottom element is last.
    BottomExtended(UniverseRef),
}

impl Universe {
    pub fn atomic(name: impl Into<String>, size: usize) -> Result<UniverseRef> {
        if size > MAX_UNIVERSE_SIZE {
            return Err(Error::UniverseTooLarge {
                size,
                max: MAX_UNIVERSE_SIZE,
            });
        }
        Ok(Arc::new(Universe {
            name: name.into(),
            kind: UniverseKind::Atomic,
            size,
        }))
    }

    /// The two-element universe.
    pub fn boolean() -> UniverseRef {
        Self::atomic("B", 2).expect("fits in a mask")
    }

    /// The one-element universe.
    pub fn unit() -> UniverseRef {
        Self::atomic("unit", 1).expect("fits in a mask")
    }

    pub fn product(
        name: impl Into<String>,
        left: &UniverseRef,
        right: &UniverseRef,
    ) -> Result<UniverseRef> {
        let size = left.size.saturating_mul(right.size);
        if size > MAX_UNIVERSE_SIZE {
            return Err(Error::UniverseTooLarge {
                size,
                max: MAX_UNIVERSE_SIZE,
            });
        }
        Ok(Arc::new(Universe {
            name: name.into(),
            kind: UniverseKind::Product(left.clone(), right.clone()),
            size,
        }))
    }

    /// Product with a synthesized `LxR` name.
    pub fn product_of(left: &UniverseRef, right: &UniverseRef) -> Result<UniverseRef> {
        Self::product(format!("{}x{}", left.name, right.name), left, right)
    }

    pub fn bottom(name: impl Into<String>, base: &UniverseRef) -> Result<UniverseRef> {
        let size = base.size + 1;
        if size > MAX_UNIVERSE_SIZE {
            return Err(Error::UniverseTooLarge {
                size,
                max: MAX_UNIVERSE_SIZE,
            });
        }
        Ok(Arc::new(Universe {
            name: name.into(),
            kind: UniverseKind::BottomExtended(base.clone()),
            size,
        }))
    }

    /// Bottom extension with a synthesized `{base}_bot` name.
    pub fn bottom_of(base: &UniverseRef) -> Result<UniverseRef> {
        Self::bottom(format!("{}_bot", base.name), base)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> &UniverseKind {
        &self.kind
    }

    pub fn as_product(&self) -> Option<(&UniverseRef, &UniverseRef)> {
        match &self.kind {
            UniverseKind::Product(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn as_bottom_extended(&self) -> Option<&UniverseRef> {
        match &self.kind {
            UniverseKind::BottomExtended(b) => Some(b),
            _ => None,
        }
    }

    /// Index of the bottom element, when this universe is bottom-extended.
    pub fn bottom_index(&self) -> Option<usize> {
        self.as_bottom_extended().map(|base| base.size)
    }

    /// Flat index of the pair `(a, b)`, when this universe is a product.
    pub fn pair_index(&self, a: usize, b: usize) -> Option<usize> {
        let (left, right) = self.as_product()?;
        if a < left.size && b < right.size {
            Some(a * right.size + b)
        } else {
            None
        }
    }

    /// Inverse of [`pair_index`](Self::pair_index).
    pub fn split_index(&self, index: usize) -> Option<(usize, usize)> {
        let (_, right) = self.as_product()?;
        if index < self.size {
            Some((index / right.size, index % right.size))
        } else {
            None
        }
    }

    pub fn check_same(&self, other: &Universe) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: self.name.clone(),
                found: other.name.clone(),
            })
        }
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.size <= cap.min(MAX_UNIVERSE_SIZE) {
            Ok(())
        } else {
            Err(Error::CapExceeded {
                universe: self.name.clone(),
                size: self.size,
                cap,
            })
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                universe: self.name.clone(),
                index,
                size: self.size,
            })
        }
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Universe) -> bool {
        self.size == other.size
            && match (&self.kind, &other.kind) {
                (UniverseKind::Atomic, UniverseKind::Atomic) => true,
                (UniverseKind::Product(a, b), UniverseKind::Product(c, d)) => a == c && b == d,
                (UniverseKind::BottomExtended(a), UniverseKind::BottomExtended(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for Universe {}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
