"""
Rechenkern
Skalare, Algebra, Relationen, Vervollständigung, Morphismen, Casimir-Elemente,
U_q(sl2)-Darstellungen und der Racah-Grenzwert
"""
