use num_traits::Float;

pub type Vec3<T> = [T; 3];

#[inline]
pub fn add<T: Float>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub<T: Float>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale<T: Float>(a: &Vec3<T>, s: T) -> Vec3<T> {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn dot<T: Float>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm<T: Float>(a: &Vec3<T>) -> T {
    dot(a, a).sqrt()
}

#[inline]
pub fn unit<T: Float>(a: &Vec3<T>) -> Vec3<T> {
    scale(a, T::one() / norm(a))
}

#[inline]
pub fn dist<T: Float>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    norm(&sub(a, b))
}

pub fn zero<T: Float>() -> Vec3<T> {
    [T::zero(); 3]
}
