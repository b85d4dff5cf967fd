use crate::bspline::BSplineWindow;

/// A real, compactly supported window `g` on `[-half_support, half_support]`.
pub trait Window: Send + Sync {
    fn value(&self, x: f64) -> f64;

    fn half_support(&self) -> f64;

    /// Right limit `g(x+)`; equal to `value` for continuous windows.
    fn value_right(&self, x: f64) -> f64 {
        self.value(x)
    }

    /// Exact piecewise representation, when the window has one.
    fn as_bspline(&self) -> Option<&BSplineWindow> {
        None
    }
}

impl Window for BSplineWindow {
    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }

    fn half_support(&self) -> f64 {
        BSplineWindow::half_support(self)
    }

    fn value_right(&self, x: f64) -> f64 {
        self.eval_right(x)
    }

    fn as_bspline(&self) -> Option<&BSplineWindow> {
        Some(self)
    }
}
