from src.cones.cones import (ConeFamily, ConeHalf, ConeSpec, cone_contains, cone_sides, export_cone_sweep,
                             half_shift_margin, in_half, minimal_opening, power_cone_bound, power_margin, sample_cone)

__all__ = [
    'ConeFamily', 'ConeHalf', 'ConeSpec', 'cone_contains', 'cone_sides', 'export_cone_sweep',
    'half_shift_margin', 'in_half', 'minimal_opening', 'power_cone_bound', 'power_margin', 'sample_cone'
]
