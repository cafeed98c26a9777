//! Functions on `N\G` in the row models: `N-\G` through the first row of `g`
//! and `N+\G` through the second row. `G` acts on the right.

use std::fmt;
use std::sync::Arc;

use crate::group::{GroupElement, Side};
use crate::C64;

type Eval = Arc<dyn Fn([f64; 2]) -> C64 + Send + Sync>;

/// A function on `N\G`; `side` names the subgroup `N` being quotiented.
#[derive(Clone)]
pub struct RowFunction {
    side: Side,
    f: Eval,
}

impl fmt::Debug for RowFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RowFunction({})", self.side.as_str())
    }
}

impl RowFunction {
    pub fn from_fn<F>(side: Side, f: F) -> Self
    where
        F: Fn([f64; 2]) -> C64 + Send + Sync + 'static,
    {
        Self { side, f: Arc::new(f) }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Row of `g` representing its coset.
    pub fn coset_row(side: Side, g: &GroupElement) -> [f64; 2] {
        match side {
            Side::Upper => g.row(1),
            Side::Lower => g.row(0),
        }
    }

    pub fn eval(&self, row: [f64; 2]) -> C64 {
        (self.f)(row)
    }

    pub fn eval_at(&self, g: &GroupElement) -> C64 {
        self.eval(Self::coset_row(self.side, g))
    }

    /// `(k g)(y) = k(y g)`.
    pub fn act_right(&self, g: &GroupElement) -> RowFunction {
        let (f, g) = (self.f.clone(), *g);
        Self::from_fn(self.side, move |r| f(g.apply_row(r)))
    }
}
