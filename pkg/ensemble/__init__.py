"""The uniform random d-regular graph model: exact enumeration, the asymptotic count and a swap-chain sampler."""
