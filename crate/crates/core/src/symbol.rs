//! Interned names for constants and variables.
//!
//! A [`Symbol`] is a `u32` handle into a process-wide table, so comparing and
//! hashing terms never touches string data. Ids at or above [`FRESH_BASE`] are
//! not in the table: they are fresh variables handed out while renaming terms
//! apart, and they never appear in values returned to callers.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

const FRESH_BASE: u32 = 1 << 31;

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

static INTERNER: LazyLock<RwLock<Interner>> = LazyLock::new(Default::default);

/// An interned identifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

impl Symbol {
    pub fn intern(name: &str) -> Symbol {
        if let Some(&id) = INTERNER.read().expect("interner poisoned").ids.get(name) {
            return Symbol(id);
        }
        let mut table = INTERNER.write().expect("interner poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Symbol(id);
        }
        let id = u32::try_from(table.names.len()).expect("symbol table overflow");
        assert!(id < FRESH_BASE, "symbol table overflow");
        let name: Arc<str> = Arc::from(name);
        table.names.push(name.clone());
        table.ids.insert(name, id);
        Symbol(id)
    }

    /// The `index`-th fresh symbol. Fresh symbols have no textual name that the
    /// term parser accepts, so they cannot collide with user symbols.
    pub(crate) fn fresh(index: u32) -> Symbol {
        assert!(index < FRESH_BASE, "fresh variable supply exhausted");
        Symbol(FRESH_BASE + index)
    }

    pub fn is_fresh(self) -> bool {
        self.0 >= FRESH_BASE
    }

    /// The canonical variable name `v{index}` (1-based) used by flows.
    pub fn canonical_var(index: usize) -> Symbol {
        static CACHE: LazyLock<Vec<Symbol>> =
            LazyLock::new(|| (1..=64).map(|i| Symbol::intern(&format!("v{i}"))).collect());
        match CACHE.get(index.wrapping_sub(1)) {
            Some(&sym) => sym,
            None => Symbol::intern(&format!("v{index}")),
        }
    }

    pub fn name(self) -> Arc<str> {
        if self.is_fresh() {
            return Arc::from(format!("_{}", self.0 - FRESH_BASE));
        }
        INTERNER.read().expect("interner poisoned").names[self.0 as usize].clone()
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::intern(name)
    }
}

/// Reserved constants shared by words, observations and machines.
pub mod reserved {
    use super::Symbol;
    use std::sync::LazyLock;

    static STAR: LazyLock<Symbol> = LazyLock::new(|| Symbol::intern("star"));
    static LEFT: LazyLock<Symbol> = LazyLock::new(|| Symbol::intern("l"));
    static RIGHT: LazyLock<Symbol> = LazyLock::new(|| Symbol::intern("r"));

    /// The begin/end marker of cyclic words.
    pub fn star() -> Symbol {
        *STAR
    }

    pub fn left() -> Symbol {
        *LEFT
    }

    pub fn right() -> Symbol {
        *RIGHT
    }

    pub fn is_reserved(sym: Symbol) -> bool {
        sym == star() || sym == left() || sym == right()
    }
}
