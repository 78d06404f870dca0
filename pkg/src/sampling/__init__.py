from src.sampling.halton import Box, HaltonSampler
