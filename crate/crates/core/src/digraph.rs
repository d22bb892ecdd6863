//! Depth-first search over small implicit digraphs on `0..n`.

/// Either a post-order rank for every node (edges go from higher to lower
/// rank) or a directed cycle, listed in path order.
pub(crate) fn postorder_or_cycle<F>(n: usize, mut out: F) -> Result<Vec<usize>, Vec<usize>>
where
    F: FnMut(usize) -> Vec<usize>,
{
    const NEW: u8 = 0;
    const OPEN: u8 = 1;
    const DONE: u8 = 2;

    let mut state = vec![NEW; n];
    let mut rank = vec![0usize; n];
    let mut next_rank = 0;
    // (node, successors, cursor)
    let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    for root in 0..n {
        if state[root] != NEW {
            continue;
        }
        state[root] = OPEN;
        stack.push((root, out(root), 0));
        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let w = top.1[top.2];
                top.2 += 1;
                match state[w] {
                    NEW => {
                        state[w] = OPEN;
                        let succ = out(w);
                        stack.push((w, succ, 0));
                    }
                    OPEN => {
                        let start = stack.iter().position(|f| f.0 == w).expect("open node on stack");
                        return Err(stack[start..].iter().map(|f| f.0).collect());
                    }
                    _ => {}
                }
            } else {
                let (v, _, _) = stack.pop().expect("non-empty");
                state[v] = DONE;
                rank[v] = next_rank;
                next_rank += 1;
            }
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_respect_edges() {
        let edges = [vec![1, 2], vec![2], vec![], vec![0]];
        let rank = postorder_or_cycle(4, |v| edges[v].clone()).unwrap();
        for (v, succ) in edges.iter().enumerate() {
            for &w in succ {
                assert!(rank[v] > rank[w]);
            }
        }
    }

    #[test]
    fn finds_cycle() {
        let edges = [vec![1], vec![2], vec![0], vec![]];
        let cycle = postorder_or_cycle(4, |v| edges[v].clone()).unwrap_err();
        assert_eq!(cycle.len(), 3);
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            assert!(edges[a].contains(&b));
        }
    }
}
