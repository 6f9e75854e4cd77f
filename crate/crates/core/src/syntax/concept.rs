use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::sync::Arc;

pub type Name = Arc<str>;

pub fn name(s: &str) -> Name {
    Arc::from(s)
}

/// A concept expression. Cloning is cheap; subterms are shared.
#[derive(Clone)]
pub struct Concept(Arc<Node>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Top,
    Bottom,
    Name(Name),
    Nominal(Name),
    Not(Concept),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(Name, Concept),
    Forall(Name, Concept),
    Nu(Name, Concept),
    Var(Name),
}

impl Deref for Concept {
    type Target = Node;
    fn deref(&self) -> &Node {
        &self.0
    }
}

impl PartialEq for Concept {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Concept {}

impl Hash for Concept {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Concept {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Concept {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return std::cmp::Ordering::Equal;
        }
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_concept(self))
    }
}

impl Concept {
    pub fn new(node: Node) -> Self {
        Concept(Arc::new(node))
    }
    pub fn node(&self) -> &Node {
        &self.0
    }
    pub fn top() -> Self {
        Concept::new(Node::Top)
    }
    pub fn bottom() -> Self {
        Concept::new(Node::Bottom)
    }
    pub fn name(n: &str) -> Self {
        Concept::new(Node::Name(name(n)))
    }
    pub fn atom(n: Name) -> Self {
        Concept::new(Node::Name(n))
    }
    pub fn nominal(n: &str) -> Self {
        Concept::new(Node::Nominal(name(n)))
    }
    pub fn var(n: &str) -> Self {
        Concept::new(Node::Var(name(n)))
    }
    pub fn not(c: Concept) -> Self {
        Concept::new(Node::Not(c))
    }
    /// Conjunction; zero operands give top, one operand is returned as is.
    pub fn and(mut cs: Vec<Concept>) -> Self {
        match cs.len() {
            0 => Concept::top(),
            1 => cs.pop().unwrap(),
            _ => Concept::new(Node::And(cs)),
        }
    }
    /// Disjunction; zero operands give bottom, one operand is returned as is.
    pub fn or(mut cs: Vec<Concept>) -> Self {
        match cs.len() {
            0 => Concept::bottom(),
            1 => cs.pop().unwrap(),
            _ => Concept::new(Node::Or(cs)),
        }
    }
    pub fn and2(a: Concept, b: Concept) -> Self {
        Concept::and(vec![a, b])
    }
    pub fn or2(a: Concept, b: Concept) -> Self {
        Concept::or(vec![a, b])
    }
    pub fn exists(r: &str, c: Concept) -> Self {
        Concept::new(Node::Exists(name(r), c))
    }
    pub fn forall(r: &str, c: Concept) -> Self {
        Concept::new(Node::Forall(name(r), c))
    }
    pub fn exists_n(r: Name, c: Concept) -> Self {
        Concept::new(Node::Exists(r, c))
    }
    pub fn forall_n(r: Name, c: Concept) -> Self {
        Concept::new(Node::Forall(r, c))
    }
    pub fn nu(x: &str, c: Concept) -> Self {
        Concept::new(Node::Nu(name(x), c))
    }
    pub fn nu_n(x: Name, c: Concept) -> Self {
        Concept::new(Node::Nu(x, c))
    }

    pub fn ptr_eq(&self, other: &Concept) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_top(&self) -> bool {
        matches!(**self, Node::Top)
    }
    pub fn is_bottom(&self) -> bool {
        matches!(**self, Node::Bottom)
    }

    /// Direct children in order.
    pub fn children(&self) -> Vec<&Concept> {
        match &**self {
            Node::Top | Node::Bottom | Node::Name(_) | Node::Nominal(_) | Node::Var(_) => vec![],
            Node::Not(c) | Node::Exists(_, c) | Node::Forall(_, c) | Node::Nu(_, c) => vec![c],
            Node::And(cs) | Node::Or(cs) => cs.iter().collect(),
        }
    }

    /// Rebuild this node with new children (same arity as `children`).
    pub fn with_children(&self, mut kids: Vec<Concept>) -> Concept {
        match &**self {
            Node::Top | Node::Bottom | Node::Name(_) | Node::Nominal(_) | Node::Var(_) => self.clone(),
            Node::Not(_) => Concept::not(kids.pop().unwrap()),
            Node::Exists(r, _) => Concept::exists_n(r.clone(), kids.pop().unwrap()),
            Node::Forall(r, _) => Concept::forall_n(r.clone(), kids.pop().unwrap()),
            Node::Nu(x, _) => Concept::nu_n(x.clone(), kids.pop().unwrap()),
            Node::And(_) => Concept::new(Node::And(kids)),
            Node::Or(_) => Concept::new(Node::Or(kids)),
        }
    }

    pub fn has_fixpoint(&self) -> bool {
        match &**self {
            Node::Nu(..) | Node::Var(_) => true,
            _ => self.children().into_iter().any(|c| c.has_fixpoint()),
        }
    }

    pub fn has_nominal(&self) -> bool {
        match &**self {
            Node::Nominal(_) => true,
            _ => self.children().into_iter().any(|c| c.has_nominal()),
        }
    }

    /// Number of nodes of the tree unfolding, saturating at `usize::MAX`.
    pub fn size(&self) -> usize {
        fn go(c: &Concept, memo: &mut std::collections::HashMap<usize, usize>) -> usize {
            let key = c.node() as *const Node as usize;
            if let Some(&n) = memo.get(&key) {
                return n;
            }
            let n = c.children().into_iter().fold(1usize, |acc, k| acc.saturating_add(go(k, memo)));
            memo.insert(key, n);
            n
        }
        go(self, &mut std::collections::HashMap::new())
    }
}

/// `lhs ⊑ rhs`
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inclusion {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Inclusion {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Inclusion { lhs, rhs }
    }
}

impl fmt::Debug for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Inclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_inclusion(self))
    }
}
