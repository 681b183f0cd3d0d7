use super::graph::IterationGraph;

const UNVISITED: u32 = u32::MAX;

/// Tarjan's algorithm, iterative so that `2^20` vertices cannot overflow the
/// call stack.
///
/// Components are returned in the order Tarjan completes them, which is a
/// reverse topological order of the condensation: the first component has
/// no arc leaving it.
pub(crate) fn tarjan(graph: &IterationGraph) -> Vec<Vec<u32>> {
    let n = graph.vertex_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0u32;

    // (vertex, next label position to examine)
    let mut call: Vec<(u32, usize)> = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some((_, w)) = graph.successors(v).nth(pos) {
                call.last_mut().expect("non-empty").1 += 1;
                let wi = w as usize;
                if index[wi] == UNVISITED {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    call.push((w, 0));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }

            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("vertex is on the stack");
                    on_stack[w as usize] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::BooleanMap;

    #[test]
    fn negation_single_component() {
        let g = IterationGraph::build(&BooleanMap::builtin("f0_1").unwrap());
        let c = tarjan(&g);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].len(), 16);
    }

    #[test]
    fn identity_all_singletons() {
        let g = IterationGraph::build(&BooleanMap::builtin("g0").unwrap());
        assert_eq!(tarjan(&g).len(), 8);
    }

    #[test]
    fn g1_pairs() {
        let g = IterationGraph::build(&BooleanMap::builtin("g1").unwrap());
        let c = tarjan(&g);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|comp| comp.len() == 2));
    }

    #[test]
    fn first_component_is_a_sink() {
        // f(x) = 11 everywhere: all arcs lead toward 11
        let f = BooleanMap::from_table(2, vec![3, 3, 3, 3]).unwrap();
        let g = IterationGraph::build(&f);
        let c = tarjan(&g);
        assert_eq!(c.len(), 4);
        assert_eq!(c[0], vec![3]);
    }

    #[test]
    fn large_graph_does_not_overflow() {
        let g = IterationGraph::build(&BooleanMap::negation(18).unwrap());
        assert_eq!(tarjan(&g).len(), 1);
    }
}
