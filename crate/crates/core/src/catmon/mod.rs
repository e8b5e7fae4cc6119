//! Finite categories as monads in matrices: free categories, the funny and
//! commuting tensor products, their internal homs, sesquifunctors and the
//! classification of functors out of a tensor.

mod category;
pub mod classify;
mod functor;
pub mod hom;
pub mod presentation;
pub mod sesqui;
pub mod tensor;

pub use category::FinCategory;
pub use classify::{classify, Classification};
pub use functor::{discrete_functor, enumerate_functors, enumerate_functors_where, FinFunctor};
pub use hom::{closedness, commuting_hom, funny_hom, transpose, untranspose, Closedness, FunctorCategory};
pub use presentation::{free_category, saturate, Graph, Path, Presentation, PresentedCategory, Saturation, Truncation};
pub use sesqui::{enumerate_sesquifunctors, is_commuting, is_commuting_direct, sesqui_check, Hexagon, HexagonFailure, Multimorphism, Sesquifunctor};
pub use tensor::{commuting_tensor, funny_tensor, product_category, quotient_category, CommutingTensor, FunnyResult, FunnyTensor, TensorRoute};
