import numpy as np


def same_ray(u, v, tol=1e-12):
    u, v = np.asarray(u), np.asarray(v)
    return abs(abs(np.vdot(u, v)) - np.linalg.norm(u) * np.linalg.norm(v)) <= tol * np.linalg.norm(u) * np.linalg.norm(v)


def same_rays_in_order(s, t):
    return len(s) == len(t) and all(same_ray(x.vector(), y.vector()) for x, y in zip(s, t))


def same_rays_any_order(s, t):
    if len(s) != len(t):
        return False
    left = [y.vector() for y in t]
    for x in s:
        hit = next((k for k, y in enumerate(left) if same_ray(x.vector(), y)), None)
        if hit is None:
            return False
        left.pop(hit)
    return True


def random_unitary(d, rng):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))
