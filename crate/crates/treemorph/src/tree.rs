//! Rooted ordered trees.
//!
//! Nodes are the integers `0..n`. The parser assigns them in preorder. Child
//! lists are ordered left to right.
//!
//! Rotation convention: at a non-root node the counter-clockwise cyclic order
//! of incident edges is `(parent, c1, .., ck)`; at the root it is `(c1, .., ck)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl OrderedTree {
    /// Builds a tree from a parent array and per-node child lists.
    pub fn from_children(root: usize, children: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = children.len();
        if root >= n {
            return Err(Error::Precondition("root index out of range".into()));
        }
        let mut parent = vec![None; n];
        for (u, cs) in children.iter().enumerate() {
            for &c in cs {
                if c >= n || c == root || parent[c].is_some() {
                    return Err(Error::Precondition("children lists do not form a tree".into()));
                }
                parent[c] = Some(u);
            }
        }
        let t = OrderedTree { root, parent, children };
        if t.preorder().len() != n {
            return Err(Error::Precondition("tree is not connected".into()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        self.parent[u]
    }

    pub fn children(&self, u: usize) -> &[usize] {
        &self.children[u]
    }

    pub fn is_leaf(&self, u: usize) -> bool {
        self.children[u].is_empty()
    }

    /// Edges as `(parent, child)` pairs, ordered by child index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter_map(|c| self.parent[c].map(|p| (p, c))).collect()
    }

    pub fn max_degree_children(&self) -> usize {
        self.children.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    pub fn preorder(&self) -> Vec<usize> {
        self.preorder_from(self.root)
    }

    /// Nodes of the subtree rooted at `u` in preorder.
    pub fn preorder_from(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            out.push(x);
            for &c in self.children[x].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn subtree_size(&self, u: usize) -> usize {
        self.preorder_from(u).len()
    }

    /// Whether `a` is an ancestor of `b` (or equal to it).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut x = Some(b);
        while let Some(y) = x {
            if y == a {
                return true;
            }
            x = self.parent[y];
        }
        false
    }

    pub fn depth(&self, u: usize) -> usize {
        let mut d = 0;
        let mut x = u;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    /// Counter-clockwise cyclic neighbour order prescribed at `u`.
    pub fn rotation(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.children[u].len() + 1);
        if let Some(p) = self.parent[u] {
            out.push(p);
        }
        out.extend_from_slice(&self.children[u]);
        out
    }
}

/// Parses `node ::= "(" node* ")"`, numbering nodes in preorder.
pub fn parse_tree(text: &str) -> Result<OrderedTree, Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty input" });
    }
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut closed_root = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => {
                if closed_root {
                    return Err(Error::Parse { pos: i, msg: "more than one root" });
                }
                let id = children.len();
                children.push(Vec::new());
                if let Some(&p) = stack.last() {
                    children[p].push(id);
                }
                stack.push(id);
            }
            b')' => {
                if stack.pop().is_none() {
                    return Err(Error::Parse { pos: i, msg: "unbalanced ')'" });
                }
                if stack.is_empty() {
                    closed_root = true;
                }
            }
            _ => return Err(Error::Parse { pos: i, msg: "unexpected character" }),
        }
    }
    if !stack.is_empty() {
        return Err(Error::Parse { pos: bytes.len(), msg: "unclosed '('" });
    }
    OrderedTree::from_children(0, children)
}

/// Canonical balanced-parenthesis form; node indices are not recorded.
pub fn serialize_tree(tree: &OrderedTree) -> String {
    let mut out = String::with_capacity(2 * tree.len());
    // (node, next child position)
    let mut stack: Vec<(usize, usize)> = vec![(tree.root(), 0)];
    out.push('(');
    while let Some(top) = stack.last_mut() {
        let (u, i) = *top;
        if i < tree.children(u).len() {
            top.1 += 1;
            stack.push((tree.children(u)[i], 0));
            out.push('(');
        } else {
            stack.pop();
            out.push(')');
        }
    }
    out
}

/// Terminal node of the path that always follows the last child.
pub fn rightmost_leaf(tree: &OrderedTree) -> usize {
    let mut u = tree.root();
    while let Some(&c) = tree.children(u).last() {
        u = c;
    }
    u
}

/// Reroots at the smallest-index childless node, keeping every node's
/// cyclic edge order. Trees with fewer than two nodes are returned unchanged.
pub fn reroot_at_leaf(tree: &OrderedTree) -> OrderedTree {
    let n = tree.len();
    if n < 2 {
        return tree.clone();
    }
    let leaf = (0..n).find(|&u| tree.is_leaf(u)).expect("finite tree has a leaf");
    let mut children = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut stack = vec![(leaf, None::<usize>)];
    visited[leaf] = true;
    while let Some((u, from)) = stack.pop() {
        let rot = tree.rotation(u);
        let order: Vec<usize> = match from {
            None => rot,
            Some(q) => {
                let k = rot.iter().position(|&x| x == q).expect("neighbour present");
                (1..rot.len()).map(|i| rot[(k + i) % rot.len()]).collect()
            }
        };
        for &c in &order {
            if !visited[c] {
                visited[c] = true;
                stack.push((c, Some(u)));
            }
        }
        children[u] = order;
    }
    OrderedTree::from_children(leaf, children).expect("rerooting preserves tree shape")
}

/// Internal nodes in left-to-right DFS postorder.
pub fn postorder_internal(tree: &OrderedTree) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(tree.root(), 0)];
    while let Some(top) = stack.last_mut() {
        let (u, i) = *top;
        if i < tree.children(u).len() {
            top.1 += 1;
            stack.push((tree.children(u)[i], 0));
        } else {
            stack.pop();
            if !tree.is_leaf(u) {
                out.push(u);
            }
        }
    }
    out
}

/// Deepest common ancestor of `u` and `v`.
pub fn lca(tree: &OrderedTree, u: usize, v: usize) -> usize {
    let (mut a, mut b) = (u, v);
    let (mut da, mut db) = (tree.depth(a), tree.depth(b));
    while da > db {
        a = tree.parent(a).unwrap();
        da -= 1;
    }
    while db > da {
        b = tree.parent(b).unwrap();
        db -= 1;
    }
    while a != b {
        a = tree.parent(a).unwrap();
        b = tree.parent(b).unwrap();
    }
    a
}
