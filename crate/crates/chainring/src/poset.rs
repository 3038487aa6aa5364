//! Finite truncations of tree-shaped partial orders.
//!
//! Elements carry a unique immediate predecessor (the parent link), so the
//! order is: `a <= b` iff `a` is an ancestor of `b` or `a == b`. A truncation
//! keeps everything of height at most the frontier height `H`; branching is
//! required strictly below the frontier, where an element of the untruncated
//! order would have at least two incomparable immediate successors.
//!
//! All set-valued queries return elements sorted lexicographically by id, so
//! every downstream report is byte-deterministic.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Opaque handle to a poset element (index into the id-sorted table).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite truncated poset.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<String>,
    parent: Vec<Option<u32>>,
    height: Vec<u32>,
    children: Vec<Vec<u32>>,
    frontier_height: u32,
}

/// One violated invariant, as data rather than a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// The element set is empty.
    Empty,
    /// An interior element (height < H) has fewer than two immediate successors.
    TooFewSuccessors { id: String, successors: usize },
    /// An element sits above the declared frontier height.
    AboveFrontier { id: String, height: u32 },
}

/// Result of `Poset::validate`: empty iff all invariants hold.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct PosetFile {
    frontier_height: u32,
    elements: Vec<PosetFileElem>,
}

#[derive(Serialize, Deserialize)]
struct PosetFileElem {
    id: String,
    parent: Option<String>,
}

impl Poset {
    /// All {0,1}-sequences of length at most `h`, ordered by "initial segment".
    ///
    /// The root is the empty sequence; the parent of a sequence drops its last
    /// term; the height of a sequence is its length.
    pub fn binary(h: u32) -> Poset {
        let mut ids = vec![String::new()];
        for len in 1..=h {
            let mut next = Vec::new();
            for n in 0..(1u64 << len) {
                let id: String =
                    (0..len).rev().map(|b| if n >> b & 1 == 1 { '1' } else { '0' }).collect();
                next.push(id);
            }
            ids.extend(next);
        }
        let pairs: Vec<(String, Option<String>)> = ids
            .into_iter()
            .map(|id| {
                let parent = if id.is_empty() { None } else { Some(id[..id.len() - 1].to_string()) };
                (id, parent)
            })
            .collect();
        Poset::from_elements(h, pairs).expect("binary poset construction is well-formed")
    }

    /// Builds a poset from (id, parent) pairs, computing heights.
    ///
    /// Rejects duplicate ids, unresolved parents, and parent cycles.
    pub fn from_elements(
        frontier_height: u32,
        elements: Vec<(String, Option<String>)>,
    ) -> Result<Poset> {
        let mut sorted = elements;
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut index: BTreeMap<&str, u32> = BTreeMap::new();
        for (i, (id, _)) in sorted.iter().enumerate() {
            if index.insert(id.as_str(), i as u32).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate id `{id}`")));
            }
        }
        let mut parent = Vec::with_capacity(sorted.len());
        for (id, p) in &sorted {
            match p {
                None => parent.push(None),
                Some(pid) => match index.get(pid.as_str()) {
                    Some(&pi) => parent.push(Some(pi)),
                    None => {
                        return Err(Error::InvalidPoset(format!(
                            "element `{id}` names unknown parent `{pid}`"
                        )))
                    }
                },
            }
        }
        // Heights by walking parent links; a walk longer than the element
        // count is a cycle.
        let n = sorted.len();
        let mut height = vec![u32::MAX; n];
        for start in 0..n {
            let mut path = Vec::new();
            let mut cur = start;
            while height[cur] == u32::MAX {
                path.push(cur);
                match parent[cur] {
                    None => {
                        height[cur] = 0;
                        path.pop();
                        break;
                    }
                    Some(p) => {
                        if path.len() > n {
                            return Err(Error::InvalidPoset(format!(
                                "parent links of `{}` form a cycle",
                                sorted[start].0
                            )));
                        }
                        cur = p as usize;
                    }
                }
            }
            while let Some(e) = path.pop() {
                height[e] = height[parent[e].expect("non-root on path") as usize] + 1;
            }
        }
        let mut children = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p as usize].push(i as u32);
            }
        }
        let ids = sorted.into_iter().map(|(id, _)| id).collect();
        Ok(Poset { ids, parent, height, children, frontier_height })
    }

    /// Loads the JSON interchange form. Ids must be nonempty strings.
    pub fn from_json_str(text: &str) -> Result<Poset> {
        let file: PosetFile = serde_json::from_str(text)?;
        for e in &file.elements {
            if e.id.is_empty() {
                return Err(Error::InvalidPoset("element ids must be nonempty".to_string()));
            }
        }
        let pairs = file.elements.into_iter().map(|e| (e.id, e.parent)).collect();
        Poset::from_elements(file.frontier_height, pairs)
    }

    /// Serializes back to the JSON interchange form.
    pub fn to_json_value(&self) -> serde_json::Value {
        let file = PosetFile {
            frontier_height: self.frontier_height,
            elements: self
                .elems()
                .map(|e| PosetFileElem {
                    id: self.id(e).to_string(),
                    parent: self.parent(e).map(|p| self.id(p).to_string()),
                })
                .collect(),
        };
        serde_json::to_value(file).expect("poset serialization cannot fail")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn frontier_height(&self) -> u32 {
        self.frontier_height
    }

    /// All elements in id order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.ids.len() as u32).map(Elem)
    }

    /// The non-minimal elements (each carries a ring variable), in id order.
    pub fn variables(&self) -> Vec<Elem> {
        self.elems().filter(|&e| !self.is_minimal(e)).collect()
    }

    pub fn elem(&self, id: &str) -> Result<Elem> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .map(|i| Elem(i as u32))
            .map_err(|_| Error::UnknownElement(id.to_string()))
    }

    pub fn id(&self, e: Elem) -> &str {
        &self.ids[e.index()]
    }

    pub fn parent(&self, e: Elem) -> Option<Elem> {
        self.parent[e.index()].map(Elem)
    }

    pub fn height(&self, e: Elem) -> u32 {
        self.height[e.index()]
    }

    pub fn is_minimal(&self, e: Elem) -> bool {
        self.parent[e.index()].is_none()
    }

    /// `a <= b` in the order: `a` is an ancestor of `b`, or equal.
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        if self.height(a) > self.height(b) {
            return false;
        }
        let mut cur = b;
        while self.height(cur) > self.height(a) {
            cur = self.parent(cur).expect("height > 0 implies a parent");
        }
        cur == a
    }

    pub fn incomparable(&self, a: Elem, b: Elem) -> bool {
        !self.leq(a, b) && !self.leq(b, a)
    }

    /// The totally ordered set `{c : c <= e}` as `[root, ..., e]`.
    pub fn chain_below(&self, e: Elem) -> Vec<Elem> {
        let mut chain = Vec::with_capacity(self.height(e) as usize + 1);
        let mut cur = Some(e);
        while let Some(c) = cur {
            chain.push(c);
            cur = self.parent(c);
        }
        chain.reverse();
        chain
    }

    /// Immediate successors, sorted by id.
    pub fn immediate_successors(&self, e: Elem) -> Vec<Elem> {
        self.children[e.index()].iter().map(|&c| Elem(c)).collect()
    }

    /// Chains from a minimal element up to a frontier element (height = H),
    /// sorted by the id of their top.
    pub fn maximal_chains(&self) -> Vec<Vec<Elem>> {
        self.elems()
            .filter(|&e| self.height(e) == self.frontier_height)
            .map(|top| self.chain_below(top))
            .collect()
    }

    /// Checks the truncation invariants; violations are data, not failures.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.is_empty() {
            violations.push(Violation::Empty);
        }
        for e in self.elems() {
            let h = self.height(e);
            if h > self.frontier_height {
                violations.push(Violation::AboveFrontier { id: self.id(e).to_string(), height: h });
            } else if h < self.frontier_height {
                let succ = self.children[e.index()].len();
                if succ < 2 {
                    violations.push(Violation::TooFewSuccessors {
                        id: self.id(e).to_string(),
                        successors: succ,
                    });
                }
            }
        }
        ValidationReport { violations }
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poset({} elements, frontier height {})", self.len(), self.frontier_height)
    }
}
