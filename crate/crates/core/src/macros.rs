// Owned-operand arithmetic forwarding to the by-reference impls.

macro_rules! forward_binops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

macro_rules! forward_div {
    ($t:ty) => {
        impl std::ops::Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                &self / &rhs
            }
        }
    };
}

