//! Strongly connected components, iteratively, for directed graphs given as
//! adjacency lists over `0..n`.

/// Tarjan's algorithm without recursion. Components come out in reverse
/// topological order: a component is emitted only after everything reachable
/// from it, so sinks come first.
pub(crate) fn sccs(n: usize, adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    assert_eq!(adj.len(), n);
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<usize>> = Vec::new();
    // Each frame is (node, position in its adjacency list).
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("component stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_sets(mut comps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        comps.sort();
        comps
    }

    #[test]
    fn separates_a_cycle_from_a_tail() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let comps = sccs(4, &adj);
        assert_eq!(as_sets(comps.clone()), vec![vec![0, 1, 2], vec![3]]);
        // Reverse topological order: the sink {3} first.
        assert_eq!(comps[0], vec![3]);
    }

    #[test]
    fn singletons_without_self_loops_are_their_own_components()
    {
        let adj = vec![vec![1], vec![2], vec![]];
        assert_eq!(sccs(3, &adj).len(), 3);
    }

    #[test]
    fn handles_two_interlocked_cycles() {
        // {0,1} and {2,3} are cycles, bridged 1 -> 2.
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let comps = sccs(4, &adj);
        assert_eq!(as_sets(comps.clone()), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(comps[0], vec![2, 3]);
    }

    #[test]
    fn deep_chain_does_not_overflow_the_stack() {
        // A 100k-long path would overflow a recursive implementation.
        let n = 100_000;
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| if v + 1 < n { vec![v + 1] } else { vec![0] })
            .collect();
        let comps = sccs(n, &adj);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), n);
    }
}
