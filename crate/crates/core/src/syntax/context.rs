use std::sync::Arc;

use super::{KindExpr, Name, Namespace, Syntax, TypeExpr};

/// A single declaration `x : T` or `X : κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Term(Name, TypeExpr),
    Type(Name, KindExpr),
}

impl Entry {
    pub fn name(&self) -> &Name {
        match self {
            Entry::Term(n, _) | Entry::Type(n, _) => n,
        }
    }
}

#[derive(Debug)]
struct Node {
    entry: Entry,
    next: Option<Arc<Node>>,
}

/// An ordered telescope of declarations, newest first internally.
///
/// Extension is persistent: `with_term` and `with_type` return a new
/// context sharing the old one.
#[derive(Clone, Debug, Default)]
pub struct Context {
    head: Option<Arc<Node>>,
    len: usize,
    max_id: u32,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn push(&self, entry: Entry) -> Context {
        let max_id = self.max_id.max(entry.name().id());
        Context {
            head: Some(Arc::new(Node {
                entry,
                next: self.head.clone(),
            })),
            len: self.len + 1,
            max_id,
        }
    }

    pub fn with_term(&self, x: Name, ty: TypeExpr) -> Context {
        debug_assert_eq!(x.namespace(), Namespace::Term);
        self.push(Entry::Term(x, ty))
    }

    pub fn with_type(&self, x: Name, kind: KindExpr) -> Context {
        debug_assert_eq!(x.namespace(), Namespace::Type);
        self.push(Entry::Type(x, kind))
    }

    /// Entries from newest to oldest.
    pub fn iter(&self) -> impl Iterator<Item = &Entry> {
        let mut cur = self.head.as_deref();
        std::iter::from_fn(move || {
            let node = cur?;
            cur = node.next.as_deref();
            Some(&node.entry)
        })
    }

    /// Entries from oldest to newest.
    pub fn entries(&self) -> Vec<&Entry> {
        let mut v: Vec<_> = self.iter().collect();
        v.reverse();
        v
    }

    pub fn lookup(&self, n: &Name) -> Option<&Entry> {
        self.iter().find(|e| e.name() == n)
    }

    pub fn lookup_term(&self, n: &Name) -> Option<&TypeExpr> {
        match self.lookup(n)? {
            Entry::Term(_, t) => Some(t),
            Entry::Type(..) => None,
        }
    }

    pub fn lookup_type(&self, n: &Name) -> Option<&KindExpr> {
        match self.lookup(n)? {
            Entry::Type(_, k) => Some(k),
            Entry::Term(..) => None,
        }
    }

    pub fn contains(&self, n: &Name) -> bool {
        self.lookup(n).is_some()
    }

    /// A name not declared here, spelled like `hint` but distinct from
    /// every declared spelling.
    pub fn fresh(&self, namespace: Namespace, hint: &str) -> Name {
        let base = match hint {
            "" | "_" => match namespace {
                Namespace::Term => "x",
                Namespace::Type => "X",
            },
            h => h,
        };
        let taken = |s: &str| self.iter().any(|e| e.name().spelling() == s);
        let mut spelling = base.to_string();
        let mut k = 1;
        while taken(&spelling) {
            spelling = format!("{base}{k}");
            k += 1;
        }
        Name::with_id(namespace, &spelling, self.max_id + 1)
    }

    /// Checks that every classifier mentions only names declared before it
    /// and that no name is declared twice. Returns the offending name.
    pub fn check_scoping(&self) -> Result<(), Name> {
        let mut seen: Vec<&Name> = Vec::new();
        for e in self.entries() {
            if seen.contains(&e.name()) {
                return Err(e.name().clone());
            }
            let free = match e {
                Entry::Term(_, t) => t.fv(),
                Entry::Type(_, k) => k.fv(),
            };
            if let Some(bad) = free.into_iter().find(|n| !seen.contains(&n)) {
                return Err(bad);
            }
            seen.push(e.name());
        }
        Ok(())
    }
}
