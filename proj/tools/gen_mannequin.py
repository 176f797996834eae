#!/usr/bin/env python3
"""Writes data/kinematics/mannequin_default.json.

56 revolute DOF:
  trunk 9   lumbar, thorax, chest: three z/y/x groups
  neck  7   lower neck z/y/x, upper neck y, head z/y/x
  arm  13   clavicle z/x, shoulder z/x/y, elbow y, forearm z, wrist x/y,
            thumb x/y, fingers y, finger tips y  (x2)
  leg   7   hip z/x/y, knee y, ankle y/x, toe y  (x2)

Frame convention: z up, x forward, +y to the mannequin's left. Lengths in mm.
The root is the pelvis; legs hang from the root so the trunk lock leaves
them free.
"""
import json
import pathlib

AX = {"x": [1, 0, 0], "y": [0, 1, 0], "z": [0, 0, 1]}
joints = []


def joint(name, parent, axis, lim, origin=(0, 0, 0), box=None):
    j = {"name": name, "parent": parent, "type": "revolute", "axis": AX[axis],
         "origin": {"position_mm": list(origin)}, "limits_deg": list(lim)}
    if box:
        j["box_mm"] = [list(box[0]), list(box[1])]
    joints.append(j)
    return name


def group(prefix, parent, origin, axes, lims, box=None):
    p = parent
    for i, (a, lim) in enumerate(zip(axes, lims)):
        last = i == len(axes) - 1
        p = joint(f"{prefix}_{a}", p, a, lim, origin if i == 0 else (0, 0, 0),
                  box if last else None)
    return p


p = group("lumbar", None, (0, 0, 0), "zyx", [(-40, 40), (-30, 60), (-30, 30)],
          ((-90, -140, -60), (90, 140, 150)))
p = group("thorax", p, (0, 0, 150), "zyx", [(-30, 30), (-20, 40), (-20, 20)])
chest = group("chest", p, (0, 0, 150), "zyx", [(-30, 30), (-20, 40), (-20, 20)],
              ((-90, -160, 0), (90, 160, 200)))
trunk = [j["name"] for j in joints]

p = group("neck", chest, (0, 0, 200), "zyx", [(-60, 60), (-40, 50), (-30, 30)])
p = joint("neck_upper_y", p, "y", (-30, 30), (0, 0, 60))
group("head", p, (0, 0, 60), "zyx", [(-70, 70), (-40, 40), (-30, 30)],
      ((-90, -75, 0), (110, 75, 220)))

rest = {}
for side, s in (("l", 1), ("r", -1)):
    def lim_abd(lo, hi):
        return (lo, hi) if s > 0 else (-hi, -lo)

    p = joint(f"{side}_clavicle_z", chest, "z", (-20, 20), (0, 30 * s, 170))
    p = joint(f"{side}_clavicle_x", p, "x", lim_abd(-10, 30))
    p = joint(f"{side}_shoulder_z", p, "z", (-90, 90), (0, 170 * s, 0))
    p = joint(f"{side}_shoulder_x", p, "x", lim_abd(-30, 170))
    p = joint(f"{side}_shoulder_y", p, "y", (-180, 60), box=((-40, -40, -300), (40, 40, 0)))
    p = joint(f"{side}_elbow_y", p, "y", (-150, 0), (0, 0, -300))
    p = joint(f"{side}_forearm_z", p, "z", (-90, 90), box=((-35, -35, -260), (35, 35, 0)))
    p = joint(f"{side}_wrist_x", p, "x", (-40, 40), (0, 0, -260))
    wrist = joint(f"{side}_wrist_y", p, "y", (-70, 70), box=((-25, -45, -160), (25, 45, 0)))
    p = joint(f"{side}_thumb_x", wrist, "x", lim_abd(0, 60), (20, 30 * s, -40))
    joint(f"{side}_thumb_y", p, "y", (-80, 0))
    p = joint(f"{side}_fingers_y", wrist, "y", (-90, 0), (0, 0, -110))
    joint(f"{side}_fingertips_y", p, "y", (-90, 0), (0, 0, -50))
    rest[f"{side}_shoulder_x"] = 10 * s
    rest[f"{side}_shoulder_y"] = -30
    rest[f"{side}_elbow_y"] = -70

for side, s in (("l", 1), ("r", -1)):
    p = joint(f"{side}_hip_z", None, "z", (-45, 45), (0, 90 * s, -80))
    p = joint(f"{side}_hip_x", p, "x", (-30, 45) if s > 0 else (-45, 30))
    p = joint(f"{side}_hip_y", p, "y", (-120, 30), box=((-60, -60, -420), (60, 60, 0)))
    p = joint(f"{side}_knee_y", p, "y", (0, 150), (0, 0, -420),
              ((-50, -50, -400), (50, 50, 0)))
    p = joint(f"{side}_ankle_y", p, "y", (-45, 45), (0, 0, -400))
    p = joint(f"{side}_ankle_x", p, "x", (-30, 30), box=((-40, -50, -80), (170, 50, 0)))
    joint(f"{side}_toe_y", p, "y", (-40, 40), (130, 0, -60))

assert len(joints) == 56, len(joints)
doc = {
    "name": "mannequin_default",
    "kind": "mannequin",
    "joints": joints,
    "trunk": trunk,
    "left_hand": {"joint": "l_wrist_y", "offset": {"position_mm": [0, 0, -80]}},
    "right_hand": {"joint": "r_wrist_y", "offset": {"position_mm": [0, 0, -80]}},
    "rest_deg": rest,
}
out = pathlib.Path(__file__).resolve().parent.parent / "data" / "kinematics" / "mannequin_default.json"
lines = ",\n".join("  " + json.dumps(j) for j in joints)
body = json.dumps({k: v for k, v in doc.items() if k != "joints"}, indent=1)
out.write_text('{\n "joints": [\n' + lines + '\n ],' + body[1:] + "\n")
print(out)
