use super::{Graph, Subgraph};

/// Blocks (maximal 2-connected subgraphs, bridges included) of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Edge indices of each block, sorted; blocks sorted by smallest edge.
    pub blocks: Vec<Vec<usize>>,
    /// Vertices lying in more than one block, increasing.
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Each block as a standalone graph.
    pub fn subgraphs(&self, g: &Graph) -> Vec<Subgraph> {
        self.blocks.iter().map(|b| g.edge_subgraph(b)).collect()
    }
}

struct Frame {
    v: usize,
    parent_edge: usize,
    next: usize,
}

/// Hopcroft-Tarjan with an explicit edge stack, iterative.
pub(super) fn decompose(g: &Graph) -> BlockDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push(Frame {
            v: root,
            parent_edge: usize::MAX,
            next: 0,
        });
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if frame.next < g.adj[v].len() {
                let (w, e) = g.adj[v][frame.next];
                let (w, e) = (w as usize, e as usize);
                frame.next += 1;
                if e == frame.parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(Frame {
                        v: w,
                        parent_edge: e,
                        next: 0,
                    });
                } else if disc[w] < disc[v] {
                    // back edge to an ancestor
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = stack.pop().unwrap();
                if let Some(parent) = stack.last() {
                    let p = parent.v;
                    low[p] = low[p].min(low[done.v]);
                    if low[done.v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == done.parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);

    let mut membership = vec![0usize; n];
    for b in &blocks {
        let mut vs: Vec<usize> = b
            .iter()
            .flat_map(|&e| {
                let (u, v) = g.edge(e);
                [u, v]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            membership[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| membership[v] > 1).collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
    }
}
