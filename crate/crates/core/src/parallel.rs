//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it every call runs sequentially. Output order never
//! depends on the execution mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Parallel,
    Sequential,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Maps `f` over `items`, keeping input order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Maps and flattens, keeping input order.
pub fn flat_map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().flat_map_iter(f).collect(),
        _ => items.iter().flat_map(f).collect(),
    }
}

/// First item (in input order) for which `f` returns `Some`.
pub fn find_first<T, R, F>(exec: Execution, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().find_map_first(f),
        _ => items.iter().find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Execution::Parallel, Execution::Sequential] {
            assert_eq!(map(exec, &xs, |x| x * x)[999], 998001);
            assert_eq!(
                flat_map(exec, &xs[..3], |&x| vec![x; x as usize]),
                vec![1, 2, 2]
            );
            assert_eq!(
                find_first(exec, &xs, |&x| (x % 97 == 96).then_some(x)),
                Some(96)
            );
        }
    }
}
