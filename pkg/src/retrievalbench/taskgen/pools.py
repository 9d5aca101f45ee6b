"""Static corpora backing the resume generator.

The resumes are fictional; pools are shipped as data so generation is fully
offline and deterministic.  Name pools are combined first x last, giving
len(FIRST_NAMES) * len(LAST_NAMES) distinct full names.
"""

from __future__ import annotations

FIRST_NAMES: tuple[str, ...] = (
    "Hallie", "Sonali", "Kieran", "Rika", "Emiko", "Shiori", "Mia", "Ava",
    "Aditya", "Serena", "Noah", "Leo", "Olivia", "Ethan", "Amelia", "Lucas",
    "Isabella", "Mason", "Sophia", "Logan", "Charlotte", "Elijah", "Harper",
    "James", "Evelyn", "Benjamin", "Abigail", "Henry", "Emily", "Samuel",
    "Ella", "Daniel", "Grace", "Matthew", "Chloe", "Joseph", "Lily", "David",
    "Hannah", "Carter", "Zoe", "Owen", "Nora", "Wyatt", "Ruby", "Julian",
    "Naomi", "Gabriel", "Alice", "Anthony", "Stella", "Dylan", "Violet",
    "Isaac", "Clara", "Nathan", "Maya", "Caleb", "Iris", "Aaron", "Jade",
    "Adrian", "Elena", "Miles", "Luna", "Xavier", "Ivy", "Felix", "Rosa",
    "Hugo", "Nina", "Oscar", "Tara", "Rohan", "Priya", "Arjun", "Anaya",
    "Vikram", "Meera", "Kunal", "Divya", "Rahul", "Nisha", "Sanjay", "Pooja",
    "Takeshi", "Yuki", "Haruto", "Sakura", "Kenji", "Aoi", "Daichi", "Hina",
    "Wei", "Xiulan", "Jun", "Meiling", "Hao", "Lanfen", "Cheng", "Yating",
    "Mateo", "Lucia", "Diego", "Camila", "Santiago", "Valentina", "Andres",
    "Mariana", "Omar", "Layla", "Tariq", "Amira", "Yusuf", "Zainab",
)

LAST_NAMES: tuple[str, ...] = (
    "Turner", "Jain", "Adams", "Sakamoto", "Fujiwara", "Yoshida", "Garcia",
    "Martinez", "Bhat", "Morgan", "Lewis", "Hall", "Smith", "Johnson",
    "Williams", "Brown", "Jones", "Miller", "Davis", "Rodriguez", "Wilson",
    "Anderson", "Taylor", "Thomas", "Moore", "Jackson", "Martin", "Lee",
    "Thompson", "White", "Harris", "Clark", "Ramirez", "Walker", "Young",
    "Allen", "King", "Wright", "Scott", "Torres", "Nguyen", "Hill", "Flores",
    "Green", "Rivera", "Campbell", "Mitchell", "Carter", "Roberts", "Gomez",
    "Phillips", "Evans", "Collins", "Stewart", "Morris", "Murphy", "Cook",
    "Rogers", "Reed", "Bailey", "Bell", "Cooper", "Richardson", "Cox",
    "Howard", "Ward", "Peterson", "Gray", "James", "Watson", "Brooks",
    "Kelly", "Sanders", "Price", "Bennett", "Wood", "Barnes", "Ross",
    "Henderson", "Coleman", "Jenkins", "Perry", "Powell", "Long", "Patterson",
    "Hughes", "Washington", "Butler", "Simmons", "Foster", "Tanaka", "Suzuki",
    "Takahashi", "Watanabe", "Ito", "Nakamura", "Kobayashi", "Kato", "Chen",
    "Wang", "Zhang", "Liu", "Yang", "Huang", "Zhao", "Wu", "Zhou", "Xu",
    "Patel", "Sharma", "Gupta", "Singh", "Kumar", "Reddy", "Mehta", "Iyer",
)

SCHOOLS: tuple[str, ...] = (
    "New York University",
    "Mithibai College",
    "Tokyo University of Agriculture and Technology",
    "Jilin University",
    "Xiamen University",
    "University of Pennsylvania",
    "Stanford University",
    "University of Toronto",
    "Kyoto University",
    "Seoul National University",
    "Tsinghua University",
    "Peking University",
    "Fudan University",
    "Zhejiang University",
    "National University of Singapore",
    "University of Melbourne",
    "University of Cape Town",
    "University of Edinburgh",
    "King's College London",
    "Trinity College Dublin",
    "ETH Zurich",
    "Technical University of Munich",
    "Sorbonne University",
    "University of Amsterdam",
    "KU Leuven",
    "Uppsala University",
    "University of Helsinki",
    "Charles University",
    "University of Warsaw",
    "Bocconi University",
    "University of Sao Paulo",
    "Monterrey Institute of Technology",
    "University of Buenos Aires",
    "Indian Institute of Technology Bombay",
    "Indian Institute of Science",
    "Cairo University",
    "University of Nairobi",
    "McGill University",
    "University of British Columbia",
    "Australian National University",
)

INTRO_SENTENCES: tuple[str, ...] = (
    "Creative writer exploring the impact of social media on culture.",
    "An artist and writer inspired by travels across cultures.",
    "Aspiring data scientist who volunteers at a local coding club.",
    "Debate team captain fascinated by the history of public institutions.",
    "Amateur photographer documenting disappearing city storefronts.",
    "Community organizer running weekend tutoring sessions for kids.",
    "Self-taught animator working on a short film about migration.",
    "Marathon enthusiast studying the physiology of endurance sports.",
    "Student journalist covering campus sustainability initiatives.",
    "Weekend volunteer at an animal shelter and aspiring veterinarian.",
    "Board game designer prototyping cooperative strategy games.",
    "Urban gardener experimenting with rooftop hydroponics.",
    "Open-source contributor maintaining a small mapping library.",
    "Choir member researching regional folk music traditions.",
    "Robotics club founder mentoring first-year students.",
    "Film society president curating retrospectives of silent cinema.",
    "Language exchange host practicing four languages over coffee.",
    "Museum docent with a passion for early printing technology.",
    "Student theater director staging plays in found spaces.",
    "Astronomy club treasurer organizing dark-sky observation trips.",
    "Chess instructor teaching strategy at a neighborhood library.",
    "Podcast producer interviewing first-generation college students.",
    "Cycling advocate mapping safe routes for commuters.",
    "Ceramics studio assistant rediscovering traditional glazes.",
    "Oral history collector recording family recipes and their stories.",
    "Birdwatcher keeping a decade-long migration notebook.",
    "Science-fair mentor who builds weather stations from spare parts.",
    "Literary magazine editor championing translated fiction.",
    "Venture club analyst studying cooperative business models.",
    "Trail maintenance volunteer restoring old hiking paths.",
)
