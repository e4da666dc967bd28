# Wronski orthogonalization toolkit
