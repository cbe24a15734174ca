/// Derives owned-operand arithmetic from the `&T op &T` implementations.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_binops {
    ($t:ty) => {
        $crate::forward_binops!(@one $t, Add, add);
        $crate::forward_binops!(@one $t, Sub, sub);
        $crate::forward_binops!(@one $t, Mul, mul);
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
    (@one $t:ty, $tr:ident, $m:ident) => {
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(&self, &rhs)
            }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                std::ops::$tr::$m(&self, rhs)
            }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                std::ops::$tr::$m(self, &rhs)
            }
        }
    };
}
